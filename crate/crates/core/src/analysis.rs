//! Hypothesis formulas, their comparison with extracted expressions, and
//! trend grids over one or two varied attributes.

use std::fmt;

use crate::encoding::{minterm_bits, minterm_transform, FuzzifiedObject};
use crate::error::{Error, Result};
use crate::logiccode::{
    approx_forward, level_factor, BitTensor, LogicExpressionBits, ScalingParams,
};

/// Propositional formula over attribute indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypothesisAst {
    Atom(usize),
    Not(Box<HypothesisAst>),
    And(Box<HypothesisAst>, Box<HypothesisAst>),
    Or(Box<HypothesisAst>, Box<HypothesisAst>),
    Xor(Box<HypothesisAst>, Box<HypothesisAst>),
}

impl HypothesisAst {
    pub fn eval(&self, assignment: &[bool]) -> bool {
        match self {
            HypothesisAst::Atom(i) => assignment[*i],
            HypothesisAst::Not(a) => !a.eval(assignment),
            HypothesisAst::And(a, b) => a.eval(assignment) && b.eval(assignment),
            HypothesisAst::Or(a, b) => a.eval(assignment) || b.eval(assignment),
            HypothesisAst::Xor(a, b) => a.eval(assignment) != b.eval(assignment),
        }
    }

    pub fn max_atom(&self) -> Option<usize> {
        match self {
            HypothesisAst::Atom(i) => Some(*i),
            HypothesisAst::Not(a) => a.max_atom(),
            HypothesisAst::And(a, b) | HypothesisAst::Or(a, b) | HypothesisAst::Xor(a, b) => {
                a.max_atom().max(b.max_atom())
            }
        }
    }
}

impl fmt::Display for HypothesisAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypothesisAst::Atom(i) => write!(f, "a{}", i + 1),
            HypothesisAst::Not(a) => write!(f, "not {a}"),
            HypothesisAst::And(a, b) => write!(f, "({a} and {b})"),
            HypothesisAst::Or(a, b) => write!(f, "({a} or {b})"),
            HypothesisAst::Xor(a, b) => write!(f, "({a} xor {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Xor,
    LParen,
    RParen,
}

fn describe(t: Option<&Token>) -> String {
    match t {
        None => "end of input".into(),
        Some(Token::Ident(s)) => format!("`{s}`"),
        Some(Token::Not) => "`not`".into(),
        Some(Token::And) => "`and`".into(),
        Some(Token::Or) => "`or`".into(),
        Some(Token::Xor) => "`xor`".into(),
        Some(Token::LParen) => "`(`".into(),
        Some(Token::RParen) => "`)`".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' | ')' | '!' | '~' | '&' | '|' | '^' => {
                chars.next();
                tokens.push(match c {
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    '!' | '~' => Token::Not,
                    '&' => Token::And,
                    '|' => Token::Or,
                    _ => Token::Xor,
                });
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '.' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(match word.to_ascii_lowercase().as_str() {
                    "not" => Token::Not,
                    "and" => Token::And,
                    "or" => Token::Or,
                    "xor" => Token::Xor,
                    _ => Token::Ident(word),
                });
            }
            other => {
                return Err(Error::Syntax {
                    token: tokens.len() + 1,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn error(&self, expected: &str) -> Error {
        Error::Syntax {
            token: self.pos + 1,
            message: format!("expected {expected}, found {}", describe(self.peek())),
        }
    }

    // expr := term (('or' | 'xor') term)*
    fn expr(&mut self) -> Result<HypothesisAst> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Or) => {
                    self.pos += 1;
                    lhs = HypothesisAst::Or(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Xor) => {
                    self.pos += 1;
                    lhs = HypothesisAst::Xor(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // term := factor ('and' factor)*
    fn term(&mut self) -> Result<HypothesisAst> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            lhs = HypothesisAst::And(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    // factor := 'not' factor | '(' expr ')' | atom
    fn factor(&mut self) -> Result<HypothesisAst> {
        match self.peek().cloned() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(HypothesisAst::Not(Box::new(self.factor()?)))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.error("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                let index = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(Error::UnknownAttribute(name))?;
                self.pos += 1;
                Ok(HypothesisAst::Atom(index))
            }
            _ => Err(self.error("an attribute, `not` or `(`")),
        }
    }
}

/// Parses a propositional formula. Precedence: `not` > `and` > `or`/`xor`,
/// all binary operators left-associative. `!`/`~`, `&`, `|` and `^` are
/// accepted for `not`, `and`, `or` and `xor`. Syntax errors carry the 1-based
/// token position.
pub fn parse_hypothesis(text: &str, names: &[String]) -> Result<HypothesisAst> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        names,
    };
    let ast = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("an operator or end of input"));
    }
    Ok(ast)
}

/// Truth table of the formula over `n` attributes, minterm order.
pub fn ast_to_minterms(ast: &HypothesisAst, n: usize) -> Result<LogicExpressionBits> {
    if let Some(index) = ast.max_atom().filter(|&i| i >= n) {
        return Err(Error::AttributeOutOfRange { index, n });
    }
    let active = (0..1usize << n)
        .map(|k| Ok(ast.eval(&minterm_bits(k, n)?)))
        .collect::<Result<Vec<bool>>>()?;
    LogicExpressionBits::new(active)
}

/// Confusion counts between an extracted expression `e` and a hypothesis `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonMetrics {
    pub v11: usize,
    pub v10: usize,
    pub v01: usize,
    pub v00: usize,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    /// `v11 + v01 == 0`; precision reported as 0.
    pub precision_undefined: bool,
    /// `v11 + v10 == 0`; recall reported as 0.
    pub recall_undefined: bool,
    /// `e` implies `h` (`v10 == 0`).
    pub implies_forward: bool,
    /// `h` implies `e` (`v01 == 0`).
    pub implies_backward: bool,
    pub equivalent: bool,
}

impl ComparisonMetrics {
    pub fn to_key_values(&self) -> String {
        format!(
            "v11={}\nv10={}\nv01={}\nv00={}\naccuracy={:.3}\nprecision={:.3}{}\nrecall={:.3}{}\nimplies_forward={}\nimplies_backward={}\nequivalent={}\n",
            self.v11,
            self.v10,
            self.v01,
            self.v00,
            self.accuracy,
            self.precision,
            if self.precision_undefined { " (undefined)" } else { "" },
            self.recall,
            if self.recall_undefined { " (undefined)" } else { "" },
            self.implies_forward,
            self.implies_backward,
            self.equivalent
        )
    }

    pub fn to_csv(&self) -> String {
        format!(
            "v11,v10,v01,v00,accuracy,precision,recall,precision_undefined,recall_undefined,implies_forward,implies_backward,equivalent\n{},{},{},{},{},{},{},{},{},{},{},{}\n",
            self.v11,
            self.v10,
            self.v01,
            self.v00,
            self.accuracy,
            self.precision,
            self.recall,
            self.precision_undefined,
            self.recall_undefined,
            self.implies_forward,
            self.implies_backward,
            self.equivalent
        )
    }
}

pub fn compare(e: &LogicExpressionBits, h: &LogicExpressionBits) -> Result<ComparisonMetrics> {
    if e.len() != h.len() {
        return Err(Error::DimensionMismatch {
            expected: e.len(),
            got: h.len(),
        });
    }
    let (mut v11, mut v10, mut v01, mut v00) = (0, 0, 0, 0);
    for (&a, &b) in e.active().iter().zip(h.active()) {
        match (a, b) {
            (true, true) => v11 += 1,
            (true, false) => v10 += 1,
            (false, true) => v01 += 1,
            (false, false) => v00 += 1,
        }
    }
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    };
    Ok(ComparisonMetrics {
        v11,
        v10,
        v01,
        v00,
        accuracy: ratio(v11 + v00, e.len()),
        precision: ratio(v11, v11 + v01),
        recall: ratio(v11, v11 + v10),
        precision_undefined: v11 + v01 == 0,
        recall_undefined: v11 + v10 == 0,
        implies_forward: v10 == 0,
        implies_backward: v01 == 0,
        equivalent: v10 == 0 && v01 == 0,
    })
}

pub const DEFAULT_RESOLUTION: usize = 21;
pub const DEFAULT_FIXED_DEGREE: f64 = 0.5;

/// Approximate cell output over a uniform grid of one or two attributes.
#[derive(Debug, Clone, PartialEq)]
pub struct TrendGrid {
    pub vary: Vec<usize>,
    pub levels: Vec<usize>,
    /// Grid coordinates shared by every varied axis.
    pub axis: Vec<f64>,
    /// Base degrees; varied positions are overwritten per grid point.
    pub fixed: Vec<f64>,
    /// `values[i][j]`: first varied attribute at `axis[i]`, second at `axis[j]`
    /// (a single column when only one attribute varies).
    pub values: Vec<Vec<f64>>,
    pub scaled_threshold: f64,
}

impl TrendGrid {
    pub fn level_label(&self) -> String {
        self.levels
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Upper bound of any value in the grid.
    pub fn max_value(&self) -> f64 {
        self.levels.iter().map(|&l| level_factor(l)).sum()
    }

    /// Rows `a,b,level_set,value`; `b` is empty for one varied attribute.
    pub fn csv_rows(&self) -> String {
        let label = self.level_label();
        let mut out = String::new();
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if self.vary.len() == 2 {
                    out.push_str(&format!("{},{},{label},{v}\n", self.axis[i], self.axis[j]));
                } else {
                    out.push_str(&format!("{},,{label},{v}\n", self.axis[i]));
                }
            }
        }
        out
    }

    pub const CSV_HEADER: &'static str = "a,b,level_set,value\n";

    pub fn to_csv(&self) -> String {
        format!("{}{}", Self::CSV_HEADER, self.csv_rows())
    }
}

pub fn trend_grid(
    bt: &BitTensor,
    params: &ScalingParams,
    vary: &[usize],
    fixed: &[f64],
    levels: &[usize],
    resolution: usize,
) -> Result<TrendGrid> {
    let n = bt.attribute_count();
    if vary.is_empty() || vary.len() > 2 {
        return Err(Error::InvalidArgument(format!(
            "vary one or two attributes, not {}",
            vary.len()
        )));
    }
    if vary.len() == 2 && vary[0] == vary[1] {
        return Err(Error::InvalidArgument(
            "varied attributes must be distinct".into(),
        ));
    }
    if let Some(&index) = vary.iter().find(|&&j| j >= n) {
        return Err(Error::AttributeOutOfRange { index, n });
    }
    if resolution < 2 {
        return Err(Error::InvalidArgument(
            "grid resolution must be at least 2".into(),
        ));
    }
    if fixed.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: fixed.len(),
        });
    }
    bt.check_levels(levels)?;
    let axis: Vec<f64> = (0..resolution)
        .map(|i| i as f64 / (resolution - 1) as f64)
        .collect();
    let point = |a: f64, b: Option<f64>| -> Result<f64> {
        let mut degrees = fixed.to_vec();
        degrees[vary[0]] = a;
        if let Some(b) = b {
            degrees[vary[1]] = b;
        }
        let mt = minterm_transform(&FuzzifiedObject::new(degrees)?)?;
        approx_forward(bt, &mt, levels)
    };
    let values = axis
        .iter()
        .map(|&a| {
            if vary.len() == 2 {
                axis.iter().map(|&b| point(a, Some(b))).collect()
            } else {
                Ok(vec![point(a, None)?])
            }
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(TrendGrid {
        vary: vary.to_vec(),
        levels: levels.to_vec(),
        axis,
        fixed: fixed.to_vec(),
        values,
        scaled_threshold: params.scaled_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logiccode::bitcode;
    use proptest::prelude::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn atom(i: usize) -> Box<HypothesisAst> {
        Box::new(HypothesisAst::Atom(i))
    }

    #[test]
    fn parses_examples() {
        let ab = names(&["a", "b"]);
        assert_eq!(
            parse_hypothesis("a or b", &ab).unwrap(),
            HypothesisAst::Or(atom(0), atom(1))
        );
        let vs = names(&["v", "s", "c", "e"]);
        assert_eq!(
            parse_hypothesis("not (v and s)", &vs).unwrap(),
            HypothesisAst::Not(Box::new(HypothesisAst::And(atom(0), atom(1))))
        );
        let err = parse_hypothesis("a and and b", &ab).unwrap_err();
        assert!(matches!(err, Error::Syntax { token: 3, .. }), "{err}");
    }

    #[test]
    fn precedence_and_aliases() {
        let ab = names(&["a", "b", "c"]);
        let p = parse_hypothesis("a | b & !c", &ab).unwrap();
        assert_eq!(
            p,
            HypothesisAst::Or(
                atom(0),
                Box::new(HypothesisAst::And(
                    atom(1),
                    Box::new(HypothesisAst::Not(atom(2)))
                ))
            )
        );
        let q = parse_hypothesis("A XOR b OR c", &names(&["A", "b", "c"])).unwrap();
        assert_eq!(
            q,
            HypothesisAst::Or(Box::new(HypothesisAst::Xor(atom(0), atom(1))), atom(2))
        );
    }

    #[test]
    fn parse_errors() {
        let ab = names(&["a", "b"]);
        assert!(
            matches!(parse_hypothesis("a and z", &ab), Err(Error::UnknownAttribute(z)) if z == "z")
        );
        assert!(matches!(
            parse_hypothesis("(a or b", &ab),
            Err(Error::Syntax { token: 5, .. })
        ));
        assert!(matches!(
            parse_hypothesis("a b", &ab),
            Err(Error::Syntax { token: 2, .. })
        ));
        assert!(matches!(
            parse_hypothesis("", &ab),
            Err(Error::Syntax { token: 1, .. })
        ));
        assert!(matches!(
            parse_hypothesis("a # b", &ab),
            Err(Error::Syntax { .. })
        ));
    }

    fn bits(text: &str, n: usize) -> Vec<bool> {
        let all = names(&["a", "b", "c", "d"]);
        ast_to_minterms(&parse_hypothesis(text, &all[..n]).unwrap(), n)
            .unwrap()
            .active()
            .to_vec()
    }

    #[test]
    fn truth_tables() {
        assert_eq!(bits("a or b", 2), vec![false, true, true, true]);
        assert_eq!(bits("a and a", 3), bits("a", 3));
        assert!(bits("a and not a", 3).iter().all(|b| !b));
        let xor = bits("a xor b", 2);
        let sym: Vec<bool> = bits("a", 2)
            .iter()
            .zip(bits("b", 2))
            .map(|(x, y)| x != &y)
            .collect();
        assert_eq!(xor, sym);
    }

    #[test]
    fn comparison_examples() {
        let e = LogicExpressionBits::new(bits("a", 2)).unwrap();
        let h = LogicExpressionBits::new(bits("a or b", 2)).unwrap();
        let m = compare(&e, &h).unwrap();
        assert_eq!((m.v11, m.v10, m.v01, m.v00), (2, 0, 1, 1));
        assert_eq!(m.accuracy, 0.75);
        assert!(m.implies_forward && !m.implies_backward && !m.equivalent);

        let same = compare(&e, &e).unwrap();
        assert_eq!(same.accuracy, 1.0);
        assert!(same.equivalent && same.implies_forward && same.implies_backward);

        let opposite = compare(&e, &e.complement()).unwrap();
        assert_eq!((opposite.accuracy, opposite.v11, opposite.v00), (0.0, 0, 0));
    }

    #[test]
    fn empty_denominators_are_flagged() {
        let none = LogicExpressionBits::new(vec![false; 4]).unwrap();
        let m = compare(&none, &none).unwrap();
        assert!(m.precision_undefined && m.recall_undefined);
        assert_eq!((m.precision, m.recall), (0.0, 0.0));
        assert!(compare(&none, &LogicExpressionBits::new(vec![false; 8]).unwrap()).is_err());
    }

    fn tensor(levels: &[&[usize]]) -> BitTensor {
        BitTensor::from_levels(
            levels
                .iter()
                .map(|ks| (0..4).map(|k| ks.contains(&k)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn trend_grid_values() {
        let bt = tensor(&[&[0], &[2, 3], &[1, 3], &[1, 2]]);
        let params = ScalingParams::new(0.0, 1.0, 0.5);
        let g = trend_grid(&bt, &params, &[0, 1], &[0.5, 0.5], &[0], 5).unwrap();
        assert_eq!(g.values[0][0], 1.0);
        assert_eq!(g.values[4][4], 0.0);
        let g = trend_grid(&bt, &params, &[0, 1], &[0.5, 0.5], &[1], 5).unwrap();
        assert!(g.values[4].iter().all(|v| (v - 0.5).abs() < 1e-12));
        assert_eq!(g.to_csv().lines().count(), 26);

        let constant = tensor(&[&[0, 1, 2, 3], &[0, 1, 2, 3]]);
        let g = trend_grid(&constant, &params, &[1], &[0.3, 0.3], &[1], 3).unwrap();
        assert!(g.values.iter().all(|r| (r[0] - 0.5).abs() < 1e-12));
        assert!(g.to_csv().contains("0.5,,1,"));
    }

    #[test]
    fn trend_grid_rejects_bad_requests() {
        let bt = tensor(&[&[0]]);
        let p = ScalingParams::new(0.0, 1.0, 0.5);
        assert!(trend_grid(&bt, &p, &[0, 1, 0], &[0.5; 2], &[0], 5).is_err());
        assert!(trend_grid(&bt, &p, &[0, 0], &[0.5; 2], &[0], 5).is_err());
        assert!(trend_grid(&bt, &p, &[0], &[0.5; 2], &[0], 1).is_err());
        assert!(trend_grid(&bt, &p, &[0], &[0.5; 2], &[1], 5).is_err());
    }

    fn arb_ast(n: usize) -> impl Strategy<Value = HypothesisAst> {
        let leaf = (0..n).prop_map(HypothesisAst::Atom);
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| HypothesisAst::Not(Box::new(a))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| HypothesisAst::And(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| HypothesisAst::Or(Box::new(a), Box::new(b))),
                (inner.clone(), inner)
                    .prop_map(|(a, b)| HypothesisAst::Xor(Box::new(a), Box::new(b))),
            ]
        })
    }

    fn not(a: HypothesisAst) -> HypothesisAst {
        HypothesisAst::Not(Box::new(a))
    }
    fn and(a: HypothesisAst, b: HypothesisAst) -> HypothesisAst {
        HypothesisAst::And(Box::new(a), Box::new(b))
    }
    fn or(a: HypothesisAst, b: HypothesisAst) -> HypothesisAst {
        HypothesisAst::Or(Box::new(a), Box::new(b))
    }

    proptest! {
        #[test]
        fn boolean_algebra_laws(x in arb_ast(4), y in arb_ast(4), z in arb_ast(4)) {
            let tt = |a: &HypothesisAst| ast_to_minterms(a, 4).unwrap();
            // De Morgan
            prop_assert_eq!(tt(&not(and(x.clone(), y.clone()))), tt(&or(not(x.clone()), not(y.clone()))));
            // double negation
            prop_assert_eq!(tt(&not(not(x.clone()))), tt(&x));
            // idempotence
            prop_assert_eq!(tt(&and(x.clone(), x.clone())), tt(&x));
            prop_assert_eq!(tt(&or(x.clone(), x.clone())), tt(&x));
            // distributivity
            prop_assert_eq!(
                tt(&and(x.clone(), or(y.clone(), z.clone()))),
                tt(&or(and(x.clone(), y.clone()), and(x.clone(), z.clone())))
            );
        }

        #[test]
        fn compare_symmetry_and_totals(a in prop::collection::vec(any::<bool>(), 16), b in prop::collection::vec(any::<bool>(), 16)) {
            let e = LogicExpressionBits::new(a).unwrap();
            let h = LogicExpressionBits::new(b).unwrap();
            let m = compare(&e, &h).unwrap();
            let r = compare(&h, &e).unwrap();
            prop_assert_eq!(m.v11 + m.v10 + m.v01 + m.v00, 16);
            prop_assert_eq!((m.v10, m.v01, m.v11, m.v00), (r.v01, r.v10, r.v11, r.v00));
            prop_assert_eq!(m.equivalent, m.accuracy == 1.0);
            let s = compare(&e, &e).unwrap();
            prop_assert!(s.accuracy == 1.0 && s.implies_forward && s.implies_backward);
        }

        #[test]
        fn trend_is_monotone_for_monotone_slices(
            bits in prop::collection::vec(any::<bool>(), 8),
            fixed in 0.0f64..=1.0,
        ) {
            // make level 0 monotone in attribute 0: k with bit set is active whenever k without it is
            let mut level = bits.clone();
            for k in 0..4 {
                if level[k] {
                    level[k | 4] = true;
                }
            }
            let bt = BitTensor::from_levels(vec![level]).unwrap();
            let g = trend_grid(&bt, &ScalingParams::new(0.0, 1.0, 0.5), &[0], &[0.0, fixed, fixed], &[0], 11).unwrap();
            for w in g.values.windows(2) {
                prop_assert!(w[1][0] >= w[0][0] - 1e-12);
            }
            prop_assert!(g.values.iter().all(|r| r[0] >= -1e-12 && r[0] <= g.max_value() + 1e-12));
        }

        #[test]
        fn trend_values_stay_in_range(w in prop::collection::vec(0.0f64..=1.0, 4), lv in 0usize..4) {
            let bt = bitcode(&w, 3).unwrap();
            let levels: Vec<usize> = (0..=lv).collect();
            let g = trend_grid(&bt, &ScalingParams::new(0.0, 1.0, 0.5), &[0, 1], &[0.5, 0.5], &levels, 6).unwrap();
            for row in &g.values {
                for v in row {
                    prop_assert!(*v >= -1e-12 && *v <= g.max_value() + 1e-12);
                }
            }
        }
    }
}
