//! The `compute` command: named cycles and literals in the quadric ring.

use quadchow::bridge::{alpha, theta};
use quadchow::quadpow::{delta, parse, rho, rost, QuadCycle};
use quadchow::schubert::{class_w, class_z, to_quadric, FlagCycle, SchubertModels};
use quadchow::{CoeffRing, Error, Orientation, QuadricContext, Result};

/// Settings that shape a computed cycle.
#[derive(Debug, Clone, Copy)]
pub struct ComputeOptions {
    pub n: u32,
    pub coeff: CoeffRing,
    pub orientation: Orientation,
}

/// Words with their byte offsets.
fn tokens(expr: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in expr.char_indices().chain([(expr.len(), ' ')]) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(pos),
            (true, Some(s)) => {
                out.push((s, &expr[s..pos]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

const BUILTINS: [(&str, usize); 7] =
    [("delta", 1), ("rho", 1), ("rost", 0), ("Z", 2), ("W", 2), ("theta", 1), ("alpha", 1)];

fn builtin_args(expr: &str) -> Result<Option<(&'static str, Vec<u32>)>> {
    let words = tokens(expr);
    let Some(&(_, head)) = words.first() else {
        return Ok(None);
    };
    let Some(&(name, arity)) = BUILTINS.iter().find(|(name, _)| *name == head) else {
        return Ok(None);
    };
    if words.len() != arity + 1 {
        let position = words.get(arity + 1).map_or(expr.len(), |w| w.0);
        let message = format!("`{name}` takes {arity} integer argument(s)");
        return Err(Error::Parse { position, message });
    }
    let mut args = Vec::with_capacity(arity);
    for &(position, word) in &words[1..] {
        let value = word.parse().map_err(|_| Error::Parse {
            position,
            message: format!("expected a nonnegative integer, found `{word}`"),
        })?;
        args.push(value);
    }
    Ok(Some((name, args)))
}

fn finish_quad(q: QuadCycle, coeff: CoeffRing) -> String {
    match coeff {
        CoeffRing::Mod2 => q.mod2().to_string(),
        CoeffRing::Integer => q.to_string(),
    }
}

fn finish_flag(x: FlagCycle<'_>, i: u32, coeff: CoeffRing) -> Result<String> {
    let x = if coeff == CoeffRing::Mod2 { x.mod2() } else { x };
    // on G_0 = X the quadric basis is the readable one
    if i == 0 {
        return to_quadric(&x).map(|q| q.to_string());
    }
    Ok(x.to_string())
}

/// Evaluates `expr` and prints its canonical expansion.
pub fn compute(expr: &str, options: ComputeOptions) -> Result<String> {
    let ctx = QuadricContext::new(options.n)?;
    let Some((name, args)) = builtin_args(expr)? else {
        return Ok(finish_quad(parse(&ctx, expr)?, options.coeff));
    };
    let coeff = options.coeff;
    match name {
        "delta" => Ok(finish_quad(delta(&ctx, args[0])?, coeff)),
        "rho" => Ok(finish_quad(rho(&ctx, args[0])?, coeff)),
        "rost" => Ok(finish_quad(rost(&ctx).into_cycle(), coeff)),
        _ => {
            let models = SchubertModels::new(options.n)?;
            let model = match (ctx.is_even(), options.orientation) {
                (true, Orientation::Minus) => &models.all()[1],
                _ => models.primary(),
            };
            match name {
                "Z" => finish_flag(class_z(model, args[0], args[1])?, args[0], coeff),
                "W" => finish_flag(class_w(model, args[0], args[1])?, args[0], coeff),
                "theta" => {
                    let t = theta(model, args[0])?;
                    Ok(if coeff == CoeffRing::Mod2 { t.mod2() } else { t }.to_string())
                }
                "alpha" => Ok(finish_quad(alpha(&models, args[0])?.into_cycle(), coeff)),
                _ => unreachable!("every builtin is handled"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: u32, expr: &str) -> Result<String> {
        compute(expr, ComputeOptions { n, coeff: CoeffRing::Integer, orientation: Orientation::Plus })
    }

    #[test]
    fn documented_examples() {
        assert_eq!(run(3, "rho 1").unwrap(), "1 x l0 + l0 x 1");
        assert_eq!(run(3, "h*h").unwrap(), "2 l1");
        assert_eq!(run(5, "Z 0 5").unwrap(), "l0");
    }

    #[test]
    fn builtin_argument_errors() {
        assert!(matches!(run(3, "rho"), Err(Error::Parse { .. })));
        assert!(matches!(run(3, "Z 1 x"), Err(Error::Parse { position: 4, .. })));
        assert!(matches!(run(3, "rho 4"), Err(Error::OutOfRange(_))));
        assert!(matches!(run(9, "h"), Err(Error::DimensionOutOfRange { .. })));
    }

    #[test]
    fn mod2_and_orientation() {
        let options = ComputeOptions { n: 3, coeff: CoeffRing::Mod2, orientation: Orientation::Plus };
        assert_eq!(compute("h*h", options).unwrap(), "0");
        let plus = run(4, "Z 2 2").unwrap();
        let minus =
            compute("Z 2 2", ComputeOptions { n: 4, coeff: CoeffRing::Integer, orientation: Orientation::Minus });
        assert_ne!(plus, minus.unwrap());
        let below =
            compute("W 1 1", ComputeOptions { n: 4, coeff: CoeffRing::Integer, orientation: Orientation::Minus });
        assert_eq!(run(4, "W 1 1").unwrap(), below.unwrap());
    }

    #[test]
    fn tokens_keep_offsets() {
        assert_eq!(tokens("  Z 1\t2 "), [(2, "Z"), (4, "1"), (6, "2")]);
    }
}
