//! Raw attribute values -> fuzzy degrees -> minterm vector.

use relulogic::encoding::{
    fit_fuzzifier, fuzzify, minterm_bits, minterm_transform, FuzzifierKind, LabeledSample,
    RawObject,
};

fn main() -> relulogic::Result<()> {
    let rows = [
        ([3.6, 8.7], true),
        ([-1.4, -3.2], false),
        ([0.3, 1.1], true),
        ([-4.1, 6.0], false),
    ];
    let samples: Vec<LabeledSample> = rows
        .iter()
        .map(|(values, label)| {
            Ok(LabeledSample {
                object: RawObject::new(values.to_vec())?,
                label: *label,
            })
        })
        .collect::<relulogic::Result<_>>()?;

    for kind in [FuzzifierKind::MinMax, FuzzifierKind::Logistic] {
        let spec = fit_fuzzifier(&samples, kind)?.with_names(vec!["v".into(), "s".into()])?;
        println!("{kind:?}");
        for s in &samples {
            let f = fuzzify(&s.object, &spec)?;
            let mt = minterm_transform(&f)?;
            print!(
                "  {:?} -> degrees {:.3?} -> minterms",
                s.object.values,
                f.degrees()
            );
            for (k, m) in mt.values().iter().enumerate() {
                let bits: String = minterm_bits(k, 2)?
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect();
                print!(" {bits}:{m:.3}");
            }
            println!("  (sum {:.3})", mt.values().iter().sum::<f64>());
        }
    }
    Ok(())
}
