//! Worked examples: automata for three subshifts, direct membership tests
//! for them, and the rectangle family with its counting set.

mod even_runs;
mod kari_moore;
mod labyrinth;
mod ssu;

pub use even_runs::{even_runs_automaton, in_even_runs};
pub use kari_moore::{complement_max, is_in_f, is_in_f_default, kari_moore_rectangle, kari_moore_torus, FReading};
pub use labyrinth::{
    cone_labyrinth_alphabet, cone_labyrinth_automaton, cone_labyrinth_core, cone_labyrinth_forbidden,
    in_cone_labyrinth, labyrinth_xn, labyrinth_xn_torus, planted_labyrinth, LabyrinthVerdict, ViolationKind,
};
pub use ssu::{in_ssu, ssu_automaton};

use crate::alphabet::Alphabet;
use crate::automaton::Automaton;

pub fn binary() -> Alphabet {
    Alphabet::new(["0", "1"]).expect("static alphabet")
}

/// Built-in automata by name.
pub fn by_name(name: &str) -> Option<Automaton> {
    Some(match name {
        "even-runs" => even_runs_automaton(),
        "ssu" => ssu_automaton(),
        "cone-labyrinth" => cone_labyrinth_automaton(),
        "cone-labyrinth-core" => cone_labyrinth_core(),
        _ => return None,
    })
}

pub const NAMES: [&str; 4] = ["even-runs", "ssu", "cone-labyrinth", "cone-labyrinth-core"];

#[cfg(test)]
mod tests {
    use alloc::vec;
    use alloc::vec::Vec;

    use super::*;
    use crate::generate::{all_tori, all_tori_upto};
    use crate::hierarchy::{classify, HierarchyLevel};
    use crate::pattern::{FinitePattern, Torus};
    use crate::semantics::{accepts, accepts_torus};
    use crate::Sym;

    fn trow(r: &[u16]) -> Torus {
        Torus::from_rows(binary(), &[r.iter().map(|&s| Sym(s)).collect()]).unwrap()
    }

    #[test]
    fn builtins_are_valid() {
        for name in NAMES {
            let a = by_name(name).unwrap();
            assert!(a.quantifier_violations().is_empty(), "{name}");
            assert!(crate::validate_automaton(&a.to_def()).is_empty(), "{name}");
        }
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn levels() {
        assert_eq!(classify(&even_runs_automaton()).unwrap(), HierarchyLevel::Pi(1));
        assert_eq!(classify(&ssu_automaton()).unwrap(), HierarchyLevel::Pi(1));
        assert_eq!(classify(&cone_labyrinth_automaton()).unwrap(), HierarchyLevel::Sigma(1));
    }

    #[test]
    fn shapes() {
        let e = even_runs_automaton();
        assert_eq!((e.states().len(), e.edges().len()), (7, 12));
        let s = ssu_automaton();
        assert_eq!(s.states().len(), 11);
        assert!(s.out_edges(s.state_by_id("k").unwrap()).is_empty());
    }

    #[test]
    fn even_runs_oracle_examples() {
        assert!(in_even_runs(&trow(&[0, 0])).unwrap());
        assert!(in_even_runs(&trow(&[1, 1, 0])).unwrap());
        assert!(!in_even_runs(&trow(&[1, 0, 0])).unwrap());
        assert!(in_even_runs(&Torus::constant(binary(), 2, 2, Sym(1)).unwrap()).unwrap());
        let foreign = Torus::constant(Alphabet::new(["a", "b"]).unwrap(), 1, 1, Sym(0)).unwrap();
        assert!(in_even_runs(&foreign).is_err());
    }

    #[test]
    fn even_runs_automaton_matches_oracle() {
        let a = even_runs_automaton();
        for t in all_tori_upto(&binary(), 3, 3) {
            assert_eq!(accepts_torus(&a, &t).unwrap(), in_even_runs(&t).unwrap(), "{t:?}");
        }
    }

    #[test]
    fn ssu_oracle_examples() {
        assert!(in_ssu(&Torus::constant(binary(), 2, 3, Sym(0)).unwrap()).unwrap());
        assert!(!in_ssu(&trow(&[0, 1])).unwrap());
        let mut rows = vec![vec![Sym(0); 3]; 3];
        rows[1][1] = Sym(1);
        assert!(in_ssu(&FinitePattern::rectangle(binary(), &rows).unwrap()).unwrap());
    }

    #[test]
    fn ssu_automaton_matches_oracle() {
        let a = ssu_automaton();
        for t in all_tori_upto(&binary(), 3, 3) {
            assert_eq!(accepts(&a, &t).unwrap(), in_ssu(&t).unwrap());
            assert_eq!(accepts(&a, &t.to_pattern()).unwrap(), in_ssu(&t.to_pattern()).unwrap());
        }
    }

    #[test]
    fn labyrinth_examples() {
        let al = cone_labyrinth_alphabet();
        let walls = Torus::constant(al.clone(), 3, 3, Sym(2)).unwrap();
        assert!(in_cone_labyrinth(&walls).unwrap().in_subshift);
        assert!(accepts(&cone_labyrinth_automaton(), &walls).unwrap());
        let p = FinitePattern::rectangle(al.clone(), &[vec![Sym(2), Sym(1), Sym(0), Sym(0), Sym(1), Sym(2)]]).unwrap();
        let v = in_cone_labyrinth(&p).unwrap();
        assert!(v.in_subshift && v.escaped.is_empty());
        let x4 = labyrinth_xn(4);
        assert_eq!(x4.bounding_box(), (crate::Cell::new(-1, -5), crate::Cell::new(5, 5)));
        assert!(!in_cone_labyrinth(&x4).unwrap().in_subshift);
        assert!(!accepts(&cone_labyrinth_automaton(), &x4).unwrap());
    }

    #[test]
    fn labyrinth_automaton_matches_oracle_small() {
        let a = cone_labyrinth_automaton();
        let al = cone_labyrinth_alphabet();
        for t in all_tori_upto(&al, 2, 2) {
            assert_eq!(accepts(&a, &t).unwrap(), in_cone_labyrinth(&t).unwrap().in_subshift, "{t:?}");
        }
        for t in all_tori(&al, 3, 1) {
            assert_eq!(accepts(&a, &t).unwrap(), in_cone_labyrinth(&t).unwrap().in_subshift, "{t:?}");
        }
    }

    #[test]
    fn kari_moore_ones() {
        for n in 1..5 {
            for k in 1..5 {
                assert_eq!(kari_moore_rectangle(n, k).count(Sym(1)) as u32, n + k + 1);
            }
        }
        let p = kari_moore_rectangle(3, 2);
        assert_eq!(p.len(), 12);
        assert!(is_in_f_default(2, 2));
        assert!(!is_in_f_default(2, 1));
        assert!(!is_in_f_default(2, 3));
        let f: Vec<u64> = (0..10).filter(|&m| is_in_f(3, m, FReading::Inclusive)).collect();
        assert_eq!(f, vec![0, 3, 4, 6, 7, 8, 9]);
    }
}
