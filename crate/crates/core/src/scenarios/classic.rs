use crate::cellset::CellSet;
use crate::error::{Error, Result};
use crate::rational::ratio;
use crate::space::{Atom, ObjectiveSpace};

use super::{check_budget, numbered, Scenario};

/// `K = {1, 2}`; a fair coin; Heads wakes Beauty on Monday only, Tails on both days.
pub fn sleeping_beauty() -> Scenario {
    let atoms = vec![
        Atom::new("H", ratio(1, 2), CellSet::from_indices(2, [0])),
        Atom::new("T", ratio(1, 2), CellSet::full(2)),
    ];
    let space = ObjectiveSpace::new(numbered(1..=2), vec!["-".into()], atoms)
        .expect("sleeping beauty is a valid space");
    Scenario::new("sb", space)
        .with_event("Heads", "atom=H")
        .with_event("Tails", "atom=T")
        .with_event("Mon", "S=1")
        .with_event("Tue", "S=2")
        .with_default_event("Heads")
}

/// A waker `W` uniform on `{A, B, C, D}` and `K = {B, C, D}`. If `W = A` all
/// three sleepers wake, otherwise only `W` does.
pub fn four_beauties() -> Scenario {
    let cells: Vec<String> = ["B", "C", "D"].map(String::from).to_vec();
    let atoms = ["A", "B", "C", "D"]
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let occ = if i == 0 {
                CellSet::full(3)
            } else {
                CellSet::from_indices(3, [i - 1])
            };
            Atom::new(*w, ratio(1, 4), occ)
        })
        .collect();
    let space = ObjectiveSpace::new(cells, vec!["-".into()], atoms)
        .expect("four beauties is a valid space");
    let mut sc = Scenario::new("four-beauties", space).with_default_event("WA");
    for w in ["A", "B", "C", "D"] {
        sc = sc.with_event(format!("W{w}"), format!("atom={w}"));
    }
    sc
}

/// A fair coin `W`; `𝒳 = {1..N}` if `W = 0`, else `𝒳 = {1..M}`.
pub fn presumptuous_philosopher(n: usize, m: usize) -> Result<Scenario> {
    if n < 1 || n > m {
        return Err(Error::InvalidParams(format!(
            "need 1 <= N <= M, got N = {n}, M = {m}"
        )));
    }
    if m > 4096 {
        return Err(Error::InvalidParams(format!("M = {m} is too large")));
    }
    check_budget(2)?;
    let atoms = vec![
        Atom::new("W0", ratio(1, 2), CellSet::from_indices(m, 0..n)),
        Atom::new("W1", ratio(1, 2), CellSet::full(m)),
    ];
    let space = ObjectiveSpace::new(numbered(1..=m as i64), vec!["-".into()], atoms)?;
    Ok(Scenario::new("presumptuous", space)
        .with_event("W0", "atom=W0")
        .with_event("W1", "atom=W1")
        .with_default_event("W0"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{build_halfer, build_thirder};

    #[test]
    fn sleeping_beauty_conditionals() {
        let sb = sleeping_beauty();
        let pe = build_thirder(&sb.ext).unwrap();
        let pl = build_halfer(&sb.ext).unwrap();
        let ev = |s: &str| sb.event(s).unwrap();
        assert_eq!(
            pe.conditional(&ev("Mon"), &ev("Tails")).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(
            pl.conditional(&ev("Heads"), &ev("Mon")).unwrap(),
            ratio(2, 3)
        );
        assert_eq!(
            pe.conditional(&ev("Heads"), &ev("Mon")).unwrap(),
            ratio(1, 2)
        );
    }

    #[test]
    fn four_beauties_halfer_location() {
        let fb = four_beauties();
        let pl = build_halfer(&fb.ext).unwrap();
        assert_eq!(pl.probability(&fb.event("S=B").unwrap()), ratio(1, 3));
    }

    #[test]
    fn presumptuous_parameters() {
        assert!(matches!(
            presumptuous_philosopher(0, 3),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            presumptuous_philosopher(4, 3),
            Err(Error::InvalidParams(_))
        ));
        let pp = presumptuous_philosopher(1, 5).unwrap();
        let pe = build_thirder(&pp.ext).unwrap();
        assert_eq!(pe.probability(&pp.event("W0").unwrap()), ratio(1, 6));
    }
}
