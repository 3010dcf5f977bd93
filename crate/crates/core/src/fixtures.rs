//! Worked examples as files: generated automata, witnesses and emulators.
//!
//! Everything here is rebuilt deterministically; the one stored artifact,
//! the 12-state planar emulator for ℤ/6, is parsed and should be checked
//! with [`EmulatorMap::verify`] like any other input.

use std::collections::BTreeMap;

use crate::automata::{Dfa, LanguageFamily};
use crate::budget::Budget;
use crate::embedding::{dart, planar, trace_faces, EmbeddingWitness, RotationSystem};
use crate::emulator::{lift_to_automaton, search_min_genus_emulator, EmulatorMap};
use crate::error::{Error, Result};
use crate::graphs::{simplify, underlying_multigraph, Multigraph};

const Z6_PLANAR_EMULATOR: &str = include_str!("../fixtures/z6_planar_emulator.txt");

/// A tight emulator of the digraph of `A_min(ℤ/6, all letters)` with two
/// vertices per fiber and a planar total digraph.
pub fn z6_planar_emulator() -> Result<EmulatorMap> {
    EmulatorMap::from_text(Z6_PLANAR_EMULATOR)
}

pub fn zmod_all(modulus: u32) -> Result<Dfa> {
    LanguageFamily::Zmod {
        modulus,
        letters: (0..modulus).collect(),
    }
    .generate()
}

/// A rotation system on a two-letter automaton whose letters act as
/// commuting permutations: at every state the order is out 0, out 1, in 0,
/// in 1, which closes every square `q, q·0, q·0·1⁻¹, q·1⁻¹` into a face.
pub fn torus_rotation(a: &Dfa) -> Result<EmbeddingWitness> {
    if a.alphabet_size() != 2 || !a.is_complete() {
        return Err(Error::Precondition("needs a complete two-letter automaton".into()));
    }
    let g = underlying_multigraph(a);
    let n = a.num_states();
    let mut incoming = vec![[None; 2]; n];
    let mut outgoing = vec![[0; 2]; n];
    for (e, (q, x, r)) in a.transitions().enumerate() {
        outgoing[q][x] = e;
        if incoming[r][x].replace(e).is_some() {
            return Err(Error::Precondition(format!("letter {x} is not a permutation")));
        }
    }
    let order = (0..n)
        .map(|q| {
            let [i0, i1] = incoming[q].map(|e| e.expect("complete permutation letters"));
            vec![dart(outgoing[q][0], 0), dart(outgoing[q][1], 0), dart(i0, 1), dart(i1, 1)]
        })
        .collect();
    trace_faces(&g, &RotationSystem::new(order))
}

/// A tree-shaped automaton for a finite language given by its words.
pub fn trie(alphabet: Vec<String>, words: &[Vec<usize>]) -> Result<Dfa> {
    let mut children: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
    let mut finals = Vec::new();
    for w in words {
        let mut q = 0;
        for &x in w {
            let next = children.len();
            q = *children[q].entry(x).or_insert(next);
            if q == next {
                children.push(BTreeMap::new());
            }
        }
        finals.push(q);
    }
    let trans = children
        .iter()
        .enumerate()
        .flat_map(|(q, m)| m.iter().map(move |(&x, &r)| (q, x, r)));
    Dfa::new(alphabet, children.len(), 0, &finals, trans.collect::<Vec<_>>())
}

/// All accepted words of the given length, in lexicographic order.
pub fn words_of_length(a: &Dfa, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(len);
    fn walk(a: &Dfa, q: usize, len: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if word.len() == len {
            if a.is_final(q) {
                out.push(word.clone());
            }
            return;
        }
        for x in 0..a.alphabet_size() {
            if let Some(r) = a.transition(q, x) {
                word.push(x);
                walk(a, r, len, word, out);
                word.pop();
            }
        }
    }
    walk(a, a.initial(), len, &mut word, &mut out);
    out
}

/// The trie of the finite cascade language for `n`, whose words all have
/// length `n + 2`.
pub fn cascade_trie(n: u32) -> Result<Dfa> {
    let a = LanguageFamily::ExponentialCascade { n }.generate()?;
    trie(a.alphabet().to_vec(), &words_of_length(&a, n as usize + 2))
}

pub fn complete_graph(v: usize) -> Multigraph {
    let edges = (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j)));
    Multigraph::from_edges(v, edges).expect("vertices in range")
}

/// Every example file, as `(file name, contents)` in a fixed order.
pub fn all() -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut dfa = |name: &str, a: &Dfa| out.push((format!("{name}.dfa"), a.to_text()));
    let z5 = LanguageFamily::Zmod {
        modulus: 5,
        letters: vec![0, 1, 2],
    }
    .generate()?;
    let z6 = zmod_all(6)?;
    let shuffle44 = LanguageFamily::Shuffle { n: 4, p: 4 }.generate()?;
    dfa("zmod5_012", &z5);
    dfa("zmod6_all", &z6);
    dfa("shuffle_4_3", &LanguageFamily::Shuffle { n: 4, p: 3 }.generate()?);
    dfa("shuffle_4_4", &shuffle44);
    dfa("two_letter_hierarchy_5", &LanguageFamily::TwoLetterHierarchy { k: 5 }.generate()?);
    dfa("cascade_0", &LanguageFamily::ExponentialCascade { n: 0 }.generate()?);
    dfa("cascade_0_trie", &cascade_trie(0)?);

    let z5_base = simplify(&underlying_multigraph(&z5.minimize()))?;
    let found = search_min_genus_emulator(&z5_base, 6, 0, &mut Budget::unlimited());
    let (z5_emulator, _) = found
        .found()
        .ok_or_else(|| Error::Precondition("no planar emulator of size 6".into()))?;
    let z5_planar = lift_to_automaton(z5_emulator, &z5.minimize())?;
    let z6_emulator = z6_planar_emulator()?;
    let z6_planar = lift_to_automaton(&z6_emulator, &z6.minimize())?;
    dfa("zmod5_012_planar", &z5_planar);
    dfa("zmod6_all_planar", &z6_planar);
    out.push(("zmod5_012_planar.emu".into(), z5_emulator.to_text()));
    out.push(("zmod6_all_planar.emu".into(), z6_emulator.to_text()));

    let k4 = planar(&complete_graph(4)).expect("K4 is planar");
    out.push(("k4.embedding".into(), k4.to_text()));
    out.push(("shuffle_4_4_torus.embedding".into(), torus_rotation(&shuffle44.minimize())?.to_text()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{is_planar, WitnessClaim};

    #[test]
    fn z6_fixture_is_a_planar_emulator() {
        let m = z6_planar_emulator().unwrap();
        m.verify().unwrap();
        assert!(m.is_tight());
        assert_eq!(m.fiber_sizes(), vec![2; 6]);
        let z6 = zmod_all(6).unwrap().minimize();
        assert_eq!(m.base, simplify(&underlying_multigraph(&z6)).unwrap());
        assert!(is_planar(&m.total.to_multigraph()));
        let b = lift_to_automaton(&m, &z6).unwrap();
        assert_eq!(b.num_states(), 12);
        assert!(b.equivalent(&z6).unwrap());
        assert!(is_planar(&underlying_multigraph(&b)));
    }

    #[test]
    fn shuffle_torus() {
        let a = LanguageFamily::Shuffle { n: 4, p: 4 }.generate().unwrap().minimize();
        let w = torus_rotation(&a).unwrap();
        assert_eq!(w.genus, 1);
        assert_eq!(w.census, BTreeMap::from([(4, 16)]));
        w.verify().unwrap();
        assert!(torus_rotation(&zmod_all(3).unwrap()).is_err());
    }

    #[test]
    fn cascade_trie_is_planar_and_equivalent() {
        let a = LanguageFamily::ExponentialCascade { n: 0 }.generate().unwrap();
        let t = cascade_trie(0).unwrap();
        assert_eq!(t.num_states(), 11);
        assert!(t.equivalent(&a).unwrap());
        assert!(is_planar(&underlying_multigraph(&t)));
        assert!(cascade_trie(1).unwrap().equivalent(&LanguageFamily::ExponentialCascade { n: 1 }.generate().unwrap()).unwrap());
    }

    #[test]
    fn emitted_files_parse_back() {
        let files = all().unwrap();
        assert_eq!(files, all().unwrap());
        for (name, text) in &files {
            match name.rsplit('.').next().unwrap() {
                "dfa" => assert_eq!(Dfa::from_text(text).unwrap().to_text(), *text),
                "emu" => {
                    let m = EmulatorMap::from_text(text).unwrap();
                    m.verify().unwrap();
                    assert_eq!(m.to_text(), *text);
                }
                "embedding" => {
                    let w = WitnessClaim::from_text(text).unwrap().check().unwrap();
                    assert_eq!(w.to_text(), *text);
                }
                other => panic!("unexpected extension {other}"),
            }
        }
    }
}
