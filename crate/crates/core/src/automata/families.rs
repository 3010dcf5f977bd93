use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::Dfa;
use crate::error::{Error, Result};

/// The named language families, with their defining automata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum LanguageFamily {
    /// Words over `letters ⊆ ℤ/kℤ` whose letter sum is 0 mod k.
    Zmod { modulus: u32, letters: Vec<u32> },
    /// Words over generators of `ℤ/n₁ × … × ℤ/n_r` summing to zero.
    ZmodProduct {
        moduli: Vec<u32>,
        generators: Vec<Vec<i64>>,
    },
    /// Two-letter words with `|w|₀ ≡ 0 mod n` and `|w|₁ ≡ 0 mod p`.
    Shuffle { n: u32, p: u32 },
    /// `ℤ/6 × ℤ/k` with `(i,j) -0-> (i+1,j)` and `(i,j) -1-> (2i,j+1)`.
    TwoLetterHierarchy { k: u32 },
    /// Finite language of words `a₀…a_{n+1}` over ℤ/5 with `a₀+…+a_n = a_{n+1}`.
    ExponentialCascade { n: u32 },
}

impl LanguageFamily {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        match self {
            LanguageFamily::Zmod { modulus, letters } => {
                if *modulus < 1 {
                    return bad("modulus must be at least 1".into());
                }
                if letters.is_empty() {
                    return bad("at least one letter is required".into());
                }
                let mut sorted = letters.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != letters.len() {
                    return bad("letters must be distinct".into());
                }
                if let Some(l) = letters.iter().find(|&&l| l >= *modulus) {
                    return bad(format!("letter {l} is not a residue mod {modulus}"));
                }
            }
            LanguageFamily::ZmodProduct { moduli, generators } => {
                if moduli.is_empty() || moduli.iter().any(|&n| n < 1) {
                    return bad("moduli must be at least 1".into());
                }
                if generators.is_empty() {
                    return bad("at least one generator is required".into());
                }
                if generators.iter().any(|g| g.len() != moduli.len()) {
                    return bad(format!("generators must have {} coordinates", moduli.len()));
                }
                let reduced: Vec<_> = generators.iter().map(|g| reduce(g, moduli)).collect();
                for (i, g) in reduced.iter().enumerate() {
                    if reduced[..i].contains(g) {
                        return bad(format!("generator {:?} repeats an earlier one", generators[i]));
                    }
                }
            }
            LanguageFamily::Shuffle { n, p } => {
                if *n < 1 || *p < 1 {
                    return bad("moduli must be at least 1".into());
                }
            }
            LanguageFamily::TwoLetterHierarchy { k } => {
                if *k < 5 {
                    return bad("the two-letter hierarchy needs k >= 5".into());
                }
            }
            LanguageFamily::ExponentialCascade { .. } => {}
        }
        Ok(())
    }

    /// Builds the defining automaton of the family member.
    pub fn generate(&self) -> Result<Dfa> {
        self.validate()?;
        match self {
            LanguageFamily::Zmod { modulus, letters } => {
                let k = *modulus as usize;
                let mut letters = letters.clone();
                letters.sort_unstable();
                let alphabet = letters.iter().map(|l| l.to_string()).collect();
                let trans = (0..k).flat_map(|i| {
                    letters
                        .iter()
                        .enumerate()
                        .map(move |(a, &l)| (i, a, (i + l as usize) % k))
                });
                Dfa::new(alphabet, k, 0, &[0], trans)
            }
            LanguageFamily::ZmodProduct { moduli, generators } => {
                let gens: Vec<Vec<u32>> = generators.iter().map(|g| reduce(g, moduli)).collect();
                let alphabet = gens
                    .iter()
                    .map(|g| {
                        let parts: Vec<String> = g.iter().map(u32::to_string).collect();
                        format!("({})", parts.join(","))
                    })
                    .collect();
                // states: the subgroup generated, in breadth-first order from 0
                let zero = vec![0u32; moduli.len()];
                let mut index = HashMap::from([(zero.clone(), 0usize)]);
                let mut elems = vec![zero.clone()];
                let mut queue = VecDeque::from([zero]);
                let mut trans = Vec::new();
                while let Some(x) = queue.pop_front() {
                    let q = index[&x];
                    for (a, g) in gens.iter().enumerate() {
                        let y: Vec<u32> = x
                            .iter()
                            .zip(g)
                            .zip(moduli)
                            .map(|((xi, gi), n)| (xi + gi) % n)
                            .collect();
                        let r = match index.get(&y) {
                            Some(&r) => r,
                            None => {
                                let r = elems.len();
                                index.insert(y.clone(), r);
                                elems.push(y.clone());
                                queue.push_back(y);
                                r
                            }
                        };
                        trans.push((q, a, r));
                    }
                }
                Dfa::new(alphabet, elems.len(), 0, &[0], trans)
            }
            LanguageFamily::Shuffle { n, p } => {
                let (n, p) = (*n as usize, *p as usize);
                let id = |i: usize, j: usize| i * p + j;
                let trans = (0..n).flat_map(|i| {
                    (0..p).flat_map(move |j| {
                        [(id(i, j), 0, id((i + 1) % n, j)), (id(i, j), 1, id(i, (j + 1) % p))]
                    })
                });
                Dfa::new(vec!["0".into(), "1".into()], n * p, 0, &[0], trans)
            }
            LanguageFamily::TwoLetterHierarchy { k } => {
                let k = *k as usize;
                let id = |i: usize, j: usize| j * 6 + i;
                let trans = (0..k).flat_map(|j| {
                    (0..6).flat_map(move |i| {
                        [
                            (id(i, j), 0, id((i + 1) % 6, j)),
                            (id(i, j), 1, id((2 * i) % 6, (j + 1) % k)),
                        ]
                    })
                });
                Dfa::new(vec!["0".into(), "1".into()], 6 * k, 0, &[0], trans)
            }
            LanguageFamily::ExponentialCascade { n } => {
                let n = *n as usize;
                let layer = |a: usize, j: usize| j * 5 + a;
                let start = 5 * (n + 1);
                let (top, bottom) = (start + 1, start + 2);
                let mut trans = Vec::new();
                for a in 0..5 {
                    trans.push((start, a, layer(a, 0)));
                    for b in 0..5 {
                        if n == 0 {
                            trans.push((layer(a, 0), b, if a == b { top } else { bottom }));
                        }
                    }
                }
                for j in 0..n {
                    for a in 0..5 {
                        for b in 0..5 {
                            trans.push((layer(a, j), b, layer((a + b) % 5, j + 1)));
                        }
                    }
                }
                if n > 0 {
                    for a in 0..5 {
                        for b in 0..5 {
                            trans.push((layer(a, n), b, if a == b { top } else { bottom }));
                        }
                    }
                }
                let alphabet = (0..5).map(|a| a.to_string()).collect();
                Dfa::new(alphabet, start + 3, start, &[top], trans)
            }
        }
    }
}

fn reduce(g: &[i64], moduli: &[u32]) -> Vec<u32> {
    g.iter()
        .zip(moduli)
        .map(|(&x, &n)| x.rem_euclid(n as i64) as u32)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_words(m: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        let mut frontier = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for a in 0..m {
                    let mut w2: Vec<usize> = w.clone();
                    w2.push(a);
                    next.push(w2);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn zmod_sizes_and_shape() {
        let a = LanguageFamily::Zmod { modulus: 5, letters: vec![0, 1, 2] }.generate().unwrap();
        assert_eq!(a.num_states(), 5);
        assert_eq!(a.alphabet_size(), 3);
        assert!(a.is_complete());
        assert_eq!(a.initial(), 0);
        assert_eq!(a.finals(), vec![0]);
    }

    #[test]
    fn zmod_language_matches_residue_sum() {
        let subsets: [&[u32]; 4] = [&[1], &[0, 1], &[1, 2], &[0, 2, 3]];
        for k in 1..=6u32 {
            for s in subsets {
                let letters: Vec<u32> = s.iter().copied().filter(|&l| l < k).collect();
                if letters.is_empty() {
                    continue;
                }
                let a = LanguageFamily::Zmod { modulus: k, letters: letters.clone() }
                    .generate()
                    .unwrap();
                let max_len = if letters.len() > 2 { 5 } else { 6 };
                for w in all_words(letters.len(), max_len) {
                    let sum: u32 = w.iter().map(|&i| letters[i]).sum();
                    assert_eq!(a.accepts_ids(&w), sum.is_multiple_of(k), "k={k} S={letters:?} w={w:?}");
                }
            }
        }
    }

    #[test]
    fn shuffle_counts() {
        let a = LanguageFamily::Shuffle { n: 4, p: 3 }.generate().unwrap();
        assert_eq!(a.num_states(), 12);
        assert_eq!(a.num_transitions(), 24);
        assert!(a.accepts(&["0", "1", "0", "1", "1", "0", "0"]).unwrap());
        assert!(!a.accepts(&["0", "1", "1"]).unwrap());
    }

    #[test]
    fn product_family_covers_shuffle() {
        let prod = LanguageFamily::ZmodProduct {
            moduli: vec![4, 3],
            generators: vec![vec![1, 0], vec![0, 1]],
        }
        .generate()
        .unwrap();
        assert_eq!(prod.num_states(), 12);
        assert_eq!(prod.alphabet(), ["(1,0)", "(0,1)"]);
        let four = LanguageFamily::ZmodProduct {
            moduli: vec![4, 3],
            generators: vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![-1, 1]],
        }
        .generate()
        .unwrap();
        assert_eq!(four.alphabet()[3], "(3,1)");
        assert_eq!(four.minimize().num_states(), 12);
    }

    #[test]
    fn cascade_zero_language() {
        let a = LanguageFamily::ExponentialCascade { n: 0 }.generate().unwrap();
        assert_eq!(a.num_states(), 8);
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(a.accepts_ids(&[x, y]), x == y);
            }
        }
        assert!(!a.accepts_ids(&[1]));
        assert!(!a.accepts_ids(&[1, 1, 1]));
    }

    #[test]
    fn cascade_sums_layers() {
        let a = LanguageFamily::ExponentialCascade { n: 2 }.generate().unwrap();
        assert_eq!(a.num_states(), 18);
        assert!(a.accepts_ids(&[1, 2, 3, 1]));
        assert!(!a.accepts_ids(&[1, 2, 3, 2]));
    }

    #[test]
    fn family_automata_are_minimal() {
        let families = [
            LanguageFamily::Zmod { modulus: 5, letters: vec![0, 1, 2] },
            LanguageFamily::Zmod { modulus: 9, letters: vec![1, 2, 3, 4] },
            LanguageFamily::Zmod { modulus: 6, letters: vec![0, 1, 2, 3, 4, 5] },
            LanguageFamily::Shuffle { n: 4, p: 3 },
            LanguageFamily::Shuffle { n: 4, p: 4 },
        ];
        for f in families {
            let a = f.generate().unwrap();
            assert_eq!(a.minimize().num_states(), a.num_states(), "{f:?}");
        }
        // the cascade keeps its dead state, so compare against the complete minimal automaton
        for n in 0..3 {
            let a = LanguageFamily::ExponentialCascade { n }.generate().unwrap();
            assert_eq!(a.minimize().complete().num_states(), a.num_states(), "cascade {n}");
        }
    }

    /// Rows j != 0 collapse in pairs: letter 1 sends (i, j) and (i+3, j) to the
    /// same state, and only row 0 can accept before another 1 is read.
    #[test]
    fn two_letter_hierarchy_minimal_size() {
        for k in 5..=9 {
            let a = LanguageFamily::TwoLetterHierarchy { k }.generate().unwrap();
            let min = a.minimize();
            assert_eq!(min.num_states(), 6 + 3 * (k as usize - 1), "k={k}");
            assert!(min.is_complete());
            assert!(a.equivalent(&min).unwrap());
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(LanguageFamily::TwoLetterHierarchy { k: 4 }.generate().is_err());
        assert!(LanguageFamily::Zmod { modulus: 3, letters: vec![3] }.generate().is_err());
        assert!(LanguageFamily::Zmod { modulus: 0, letters: vec![0] }.generate().is_err());
        assert!(LanguageFamily::ZmodProduct { moduli: vec![4, 3], generators: vec![vec![1]] }
            .generate()
            .is_err());
    }
}
