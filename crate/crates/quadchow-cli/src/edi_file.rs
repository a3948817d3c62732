//! JSON files for [`EdiSquare`] and randomized checks of propagation.

use quadchow::edi::EdiSquare;
use quadchow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A square as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdiInput {
    pub n: u32,
    #[serde(default)]
    pub marks: Vec<[u32; 2]>,
    #[serde(default)]
    pub witt_index: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rho_marks: Vec<u32>,
}

/// The input together with its propagation and, when a first Witt index is
/// given, the consistency report of the propagated square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdiOutput {
    pub n: u32,
    pub marks: Vec<[u32; 2]>,
    pub rho_marks: Vec<u32>,
    pub witt_index: Option<u32>,
    pub propagated_marks: Vec<[u32; 2]>,
    pub propagated_rho_marks: Vec<u32>,
    pub inconsistencies: Vec<[u32; 2]>,
    pub unconstrained: Option<Vec<[u32; 2]>>,
    pub ascii: String,
}

fn pairs(it: impl Iterator<Item = (u32, u32)>) -> Vec<[u32; 2]> {
    it.map(|(i, c)| [i, c]).collect()
}

impl EdiInput {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("squares serialize")
    }

    pub fn to_square(&self) -> Result<EdiSquare> {
        let mut s = EdiSquare::new(self.n)?;
        for &[i, c] in &self.marks {
            s.mark(i, c)?;
        }
        for &i in &self.rho_marks {
            s.mark_rho(i)?;
        }
        s.set_witt_index(self.witt_index)?;
        Ok(s)
    }

    pub fn from_square(s: &EdiSquare) -> Self {
        EdiInput { n: s.n(), marks: pairs(s.marks()), witt_index: s.witt_index(), rho_marks: s.rho_marks().collect() }
    }
}

pub fn process(input: &EdiInput) -> Result<EdiOutput> {
    let square = input.to_square()?;
    let closed = square.propagate();
    let (inconsistencies, unconstrained) = match input.witt_index {
        Some(i1) => {
            let report = closed.check_witt_consistency(i1)?;
            (pairs(report.inconsistent.into_iter()), Some(pairs(report.unconstrained.into_iter())))
        }
        None => (Vec::new(), None),
    };
    Ok(EdiOutput {
        n: input.n,
        marks: pairs(square.marks()),
        rho_marks: square.rho_marks().collect(),
        witt_index: input.witt_index,
        propagated_marks: pairs(closed.marks()),
        propagated_rho_marks: closed.rho_marks().collect(),
        inconsistencies,
        unconstrained,
        ascii: closed.render_ascii(),
    })
}

/// A square with `n ∈ 2..=13` (so `d ≤ 6`), up to a dozen marks and a few
/// `ρ` facts.
pub fn random_square(rng: &mut impl Rng) -> EdiSquare {
    let n = rng.random_range(2..=13);
    let d = n / 2;
    let mut s = EdiSquare::new(n).expect("n in range");
    for _ in 0..rng.random_range(0..12) {
        s.mark(rng.random_range(0..=d), rng.random_range(0..=d)).expect("node in range");
    }
    for _ in 0..rng.random_range(0..3) {
        s.mark_rho(rng.random_range(0..=d)).expect("node in range");
    }
    s
}

/// Outcome of [`check_random_squares`]: descriptions of squares violating a
/// property.
#[derive(Debug, Clone, Default)]
pub struct ClosureCheck {
    pub checked: usize,
    pub violations: Vec<String>,
}

/// Checks on `count` random squares that propagation is idempotent, extensive
/// and monotone, and that the rendering survives a trip through JSON.
pub fn check_random_squares(count: usize, seed: u64) -> ClosureCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = ClosureCheck::default();
    for _ in 0..count {
        let s = random_square(&mut rng);
        let p = s.propagate();
        let label = EdiInput::from_square(&s).to_json();
        if p.propagate() != p {
            out.violations.push(format!("not idempotent: {label}"));
        }
        if !s.marks().all(|(i, c)| p.is_marked(i, c)) || !s.rho_marks().all(|i| p.rho_marks().any(|j| j == i)) {
            out.violations.push(format!("not extensive: {label}"));
        }
        let d = s.d();
        let mut bigger = s.clone();
        bigger.mark(rng.random_range(0..=d), rng.random_range(0..=d)).expect("node in range");
        let q = bigger.propagate();
        if !p.marks().all(|(i, c)| q.is_marked(i, c)) {
            out.violations.push(format!("not monotone: {label}"));
        }
        let back = EdiInput::from_json(&EdiInput::from_square(&p).to_json()).ok().and_then(|f| f.to_square().ok());
        if back.map(|b| b.render_ascii()) != Some(p.render_ascii()) {
            out.violations.push(format!("rendering changed through JSON: {label}"));
        }
        out.checked += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mark_in_row_one_climbs() {
        let input = EdiInput { n: 7, marks: vec![[1, 0]], witt_index: None, rho_marks: vec![] };
        let out = process(&input).unwrap();
        assert_eq!(out.propagated_marks, [[1, 0], [2, 0], [3, 0]]);
        assert_eq!(out.propagated_rho_marks, [1, 2, 3]);
        assert!(out.unconstrained.is_none());
    }

    #[test]
    fn empty_marks_unchanged() {
        let input = EdiInput::from_json(r#"{"n": 6, "marks": [], "witt_index": null}"#).unwrap();
        let out = process(&input).unwrap();
        assert!(out.propagated_marks.is_empty() && out.inconsistencies.is_empty());
        assert_eq!(out.ascii, "3 ○ ○ ○ ○\n2 ○ ○ ○ ○\n1 ○ ○ ○ ○\n0 ○ ○ ○ ○\n");
    }

    #[test]
    fn witt_conflict() {
        let input = EdiInput::from_json(r#"{"n": 7, "marks": [[1, 0]], "witt_index": 2}"#).unwrap();
        let out = process(&input).unwrap();
        assert_eq!(out.inconsistencies, [[1, 0]]);
        assert_eq!(out.unconstrained.unwrap().len(), 13);
    }

    #[test]
    fn schema_and_range_errors() {
        assert!(EdiInput::from_json(r#"{"n": 7, "marks": [[1]]}"#).is_err());
        assert!(EdiInput::from_json(r#"{"n": 7, "colour": 1}"#).is_err());
        let far = EdiInput::from_json(r#"{"n": 7, "marks": [[4, 0]]}"#).unwrap();
        assert!(process(&far).is_err());
    }

    #[test]
    fn random_squares_behave() {
        let check = check_random_squares(200, 1);
        assert_eq!(check.checked, 200);
        assert!(check.violations.is_empty(), "{:?}", check.violations);
    }
}
