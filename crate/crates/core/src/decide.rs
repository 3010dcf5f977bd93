//! Bounded decision procedure for the genus and topological size of a
//! regular language.
//!
//! Every automaton computing `L` projects onto the digraph of `A_min`, and
//! after deleting surplus arcs that projection is a tight emulator. The
//! search over tight emulators, lifted back through
//! [`lift_to_automaton`], therefore sees every genus any automaton for `L`
//! can reach.

use serde::Serialize;

use crate::automata::Dfa;
use crate::bounds::{ceil, genus_lower_bound, genus_upper_bound, max_size_for_genus, rho, slope_numerator};
use crate::budget::Budget;
use crate::embedding::{genus_exact, EmbeddingWitness};
use crate::emulator::{lift_to_automaton, search_min_genus_emulator, EmulatorMap, SearchOutcome};
use crate::error::{Error, Result};
use crate::graphs::{girth, simplify, underlying_multigraph};

/// Girth of `A_min` against the class threshold `ρ(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMembership {
    pub m: usize,
    /// `None` when the underlying multigraph is a forest.
    pub girth: Option<usize>,
    pub in_class: bool,
}

pub fn class_membership(a: &Dfa) -> ClassMembership {
    let a_min = a.minimize();
    let m = a_min.alphabet_size();
    let girth = girth(&underlying_multigraph(&a_min));
    let in_class = match rho(m as u64) {
        Ok(j) => girth.is_none_or(|g| g as u64 >= j),
        Err(_) => false,
    };
    ClassMembership { m, girth, in_class }
}

/// True certifies `g(L) ≥ 1` for a two-letter language: `A_min` is complete
/// and has no simple cycle of length ≤ 3, and emulators keep it that way.
pub fn two_letter_nonplanar_certificate(a: &Dfa) -> Result<bool> {
    if a.alphabet_size() != 2 {
        return Err(Error::Precondition(format!(
            "certificate needs a two-letter alphabet, got {}",
            a.alphabet_size()
        )));
    }
    let a_min = a.minimize();
    Ok(a_min.is_complete() && girth(&underlying_multigraph(&a_min)).is_none_or(|g| g >= 4))
}

/// Largest `n` with `genus_lower_bound(m, ρ(m), n) ≤ g`.
pub fn finiteness_size_cap(m: u64, g: u64) -> Result<u64> {
    if g < 2 {
        return Err(Error::Domain(format!("size cap needs g ≥ 2, got {g}")));
    }
    let j = rho(m)?;
    max_size_for_genus(m, j, g).ok_or_else(|| Error::Domain(format!("no finite cap for m = {m}")))
}

/// Lower bound on the genus of every automaton computing `L(a_min)`, from
/// the girth that all of them share and the letters every state reads.
///
/// Emulators preserve the absence of simple cycles of length ≤ 3 but not of
/// length 4, so at most girth 4 carries over.
fn girth_lower_bound(a_min: &Dfa, girth: Option<usize>) -> (u64, u64, i64) {
    let n = a_min.num_states() as u64;
    let m_eff = (0..a_min.num_states()).map(|q| a_min.out_degree(q)).min().unwrap_or(0) as u64;
    let Some(j) = girth.map(|g| g.min(4) as u64).filter(|&j| j >= 3) else {
        return (m_eff, 0, 0);
    };
    if slope_numerator(m_eff, j) < 0 {
        return (m_eff, j, 0);
    }
    (m_eff, j, ceil(genus_lower_bound(m_eff, j, n)).max(0))
}

/// An automaton for the language together with its embedding and its
/// projection onto the digraph of `A_min`.
#[derive(Clone, Debug)]
pub struct DecisionWitness {
    pub automaton: Dfa,
    pub emulator: EmulatorMap,
    pub embedding: EmbeddingWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecisionReport {
    /// `|L|_set`, the size of the minimal automaton.
    pub size_set: usize,
    pub class: ClassMembership,
    pub genus_lower: usize,
    pub genus_upper: usize,
    pub genus_exact: bool,
    /// Size of the smallest automaton found at `genus_upper`.
    pub top_size: usize,
    /// `top_size` is `|L|_top`.
    pub top_exact: bool,
    /// Largest size through which the last search ruled everything out.
    pub sizes_exhausted: Option<usize>,
    pub budget_exhausted: bool,
    pub nodes: u64,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub witness: Option<DecisionWitness>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DecideOptions {
    /// Largest candidate size when the genus bound leaves sizes unbounded;
    /// `None` means twice `|L|_set`.
    pub max_size: Option<usize>,
}

pub fn decide_genus(a: &Dfa, budget: &mut Budget) -> DecisionReport {
    decide_genus_with(a, DecideOptions::default(), budget)
}

pub fn decide_genus_with(a: &Dfa, options: DecideOptions, budget: &mut Budget) -> DecisionReport {
    let start = budget.used();
    let a_min = a.minimize();
    let n = a_min.num_states();
    let class = class_membership(&a_min);
    let graph = underlying_multigraph(&a_min);
    let base = simplify(&graph).expect("automaton arcs are oriented");
    let mut notes = Vec::new();

    let interval = genus_exact(&graph, budget);
    let formula = genus_upper_bound(a_min.alphabet_size() as u64, n as u64).floor().to_integer() as usize;
    let mut upper = interval.upper;
    let mut witness = interval.witness.map(|embedding| DecisionWitness {
        automaton: a_min.clone(),
        emulator: EmulatorMap::identity(&base),
        embedding,
    });
    if formula < upper {
        upper = formula;
        witness = None;
    }
    let mut top_size = n;
    let (m_eff, j, bound) = girth_lower_bound(&a_min, class.girth);
    let mut lower = bound as usize;
    if lower > upper {
        notes.push(format!("girth bound {lower} exceeds a found genus {upper}; clamped"));
        lower = upper;
    }

    // sizes that can still beat the current best, when finitely many
    let cap_for = |g: usize| -> Option<usize> {
        if j < 3 || g == 0 {
            return None;
        }
        if slope_numerator(m_eff, j) <= 0 {
            return None;
        }
        max_size_for_genus(m_eff, j, g as u64).map(|s| s as usize)
    };
    let default_max = options.max_size.unwrap_or(2 * n).max(n);
    let mut sizes_exhausted = None;
    let mut inexact_search = false;
    while lower < upper {
        let target = upper - 1;
        let bounded = cap_for(target);
        let max_size = bounded.unwrap_or(default_max);
        let report = search_min_genus_emulator(&base, max_size, target, budget);
        sizes_exhausted = report.exhausted_through;
        match report.outcome {
            SearchOutcome::Found { emulator, .. } => {
                let automaton = lift_to_automaton(&emulator, &a_min).expect("search output lifts");
                let lifted = genus_exact(&underlying_multigraph(&automaton), &mut Budget::unlimited());
                debug_assert!(lifted.exact && lifted.upper <= target);
                upper = lifted.upper;
                top_size = automaton.num_states();
                witness = Some(DecisionWitness {
                    automaton,
                    emulator,
                    embedding: lifted.witness.expect("genus witness"),
                });
            }
            SearchOutcome::Exhausted if bounded.is_some() => lower = upper,
            SearchOutcome::Exhausted => {
                notes.push(format!(
                    "no automaton of genus ≤ {target} up to size {max_size}; larger sizes not ruled out"
                ));
                inexact_search = true;
                break;
            }
            SearchOutcome::BudgetExhausted => {
                inexact_search = true;
                break;
            }
        }
    }
    let exact = lower == upper;
    if !interval.exact {
        notes.push("genus of A_min is only bracketed".into());
    }
    DecisionReport {
        size_set: n,
        class,
        genus_lower: lower,
        genus_upper: upper,
        genus_exact: exact,
        top_size,
        top_exact: exact,
        sizes_exhausted,
        budget_exhausted: budget.is_exhausted() || (inexact_search && !exact),
        nodes: budget.used() - start,
        notes,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::LanguageFamily;
    use crate::emulator::EmulatorMap;

    fn gen(f: LanguageFamily) -> Dfa {
        f.generate().unwrap()
    }

    fn zmod(modulus: u32, letters: &[u32]) -> Dfa {
        gen(LanguageFamily::Zmod {
            modulus,
            letters: letters.to_vec(),
        })
    }

    #[test]
    fn class_examples() {
        let shuffle = gen(LanguageFamily::Shuffle { n: 4, p: 4 });
        assert_eq!(
            class_membership(&shuffle),
            ClassMembership {
                m: 2,
                girth: Some(4),
                in_class: false
            }
        );
        let z6 = zmod(6, &[0, 1, 2, 3, 4, 5]);
        assert_eq!(
            class_membership(&z6),
            ClassMembership {
                m: 6,
                girth: Some(1),
                in_class: false
            }
        );
        // the generated two-letter hierarchy automaton collapses to girth 3
        let h = gen(LanguageFamily::TwoLetterHierarchy { k: 5 });
        assert_eq!(
            class_membership(&h),
            ClassMembership {
                m: 2,
                girth: Some(3),
                in_class: false
            }
        );
    }

    #[test]
    fn certificate_examples() {
        assert!(two_letter_nonplanar_certificate(&gen(LanguageFamily::Shuffle { n: 4, p: 4 })).unwrap());
        assert!(!two_letter_nonplanar_certificate(&gen(LanguageFamily::Shuffle { n: 4, p: 3 })).unwrap());
        assert!(two_letter_nonplanar_certificate(&zmod(6, &[1])).is_err());
    }

    #[test]
    fn size_caps() {
        assert_eq!(finiteness_size_cap(4, 3).unwrap(), 12);
        assert_eq!(finiteness_size_cap(2, 2).unwrap(), 10);
        assert_eq!(finiteness_size_cap(3, 2).unwrap(), 4);
        assert!(finiteness_size_cap(4, 1).is_err());
        assert!(finiteness_size_cap(1, 3).is_err());
    }

    #[test]
    fn planar_minimal_automaton_is_the_answer() {
        let a = zmod(4, &[1, 2]);
        let r = decide_genus(&a, &mut Budget::unlimited());
        assert!(r.genus_exact && r.top_exact);
        assert_eq!((r.genus_lower, r.genus_upper, r.top_size), (0, 0, 4));
        assert_eq!(r.nodes, 0);
        let w = r.witness.unwrap();
        assert_eq!(w.emulator, EmulatorMap::identity(&w.emulator.base));
    }

    #[test]
    fn zmod5_needs_one_more_state() {
        let a = zmod(5, &[0, 1, 2]);
        let r = decide_genus(&a, &mut Budget::nodes(10_000_000));
        assert!(r.genus_exact && r.top_exact, "{r:?}");
        assert_eq!((r.genus_upper, r.top_size, r.size_set), (0, 6, 5));
        let w = r.witness.unwrap();
        w.emulator.verify().unwrap();
        w.embedding.verify().unwrap();
        assert_eq!(w.embedding.genus, 0);
        assert!(w.automaton.equivalent(&a).unwrap());
    }

    #[test]
    fn torus_language_bracket() {
        let a = gen(LanguageFamily::Shuffle { n: 4, p: 4 });
        let r = decide_genus(&a, &mut Budget::nodes(200_000));
        assert_eq!(r.genus_lower, 1);
        assert_eq!(r.genus_upper, 1);
        assert!(r.genus_exact);
        assert_eq!(r.top_size, 16);
    }

    #[test]
    fn lower_never_exceeds_upper() {
        for a in [
            zmod(4, &[1, 2, 3]),
            zmod(7, &[1, 2, 3]),
            gen(LanguageFamily::Shuffle { n: 3, p: 3 }),
            gen(LanguageFamily::ExponentialCascade { n: 0 }),
        ] {
            let r = decide_genus(&a, &mut Budget::nodes(20_000));
            assert!(r.genus_lower <= r.genus_upper, "{r:?}");
            if let Some(w) = &r.witness {
                assert!(w.automaton.equivalent(&a).unwrap());
                assert_eq!(w.embedding.genus, r.genus_upper);
            }
        }
    }

    #[test]
    fn more_budget_never_hurts() {
        let a = zmod(7, &[1, 2, 3]);
        let small = decide_genus(&a, &mut Budget::nodes(1_000));
        let large = decide_genus(&a, &mut Budget::nodes(100_000));
        assert!(large.genus_lower >= small.genus_lower);
        assert!(large.genus_upper <= small.genus_upper);
    }
}
