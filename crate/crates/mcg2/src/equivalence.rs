//! Certificate checking and bounded breadth-first search over the Hurwitz
//! orbit of a factorization.

use crate::factorization::{Factorization, FactorizationError, Move};
use crate::word::{Alphabet, Letter, Word};
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivalenceError {
    #[error("certificate step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: FactorizationError,
    },
    #[error("state cap of {cap} states exceeded")]
    ResourceLimit { cap: usize },
}

/// An ordered list of moves carrying one factorization to another.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveCertificate {
    pub moves: Vec<Move>,
}

impl MoveCertificate {
    pub fn new(moves: Vec<Move>) -> MoveCertificate {
        MoveCertificate { moves }
    }

    /// Undoes self on factorizations of length `len` (moves never change
    /// the length, so one value covers every step).
    pub fn inverse(&self, len: usize) -> MoveCertificate {
        MoveCertificate {
            moves: self.moves.iter().rev().map(|m| m.inverse(len)).collect(),
        }
    }

    pub fn concat(&self, then: &MoveCertificate) -> MoveCertificate {
        let mut moves = self.moves.clone();
        moves.extend(then.moves.iter().cloned());
        MoveCertificate { moves }
    }
}

/// Applies the certificate to `src` and reports whether the result equals
/// `dst` as a tuple of mapping classes. Errors carry the 1-based step at
/// which a move failed to apply.
pub fn verify_certificate(
    src: &Factorization,
    dst: &Factorization,
    cert: &MoveCertificate,
) -> Result<bool, EquivalenceError> {
    let mut cur = src.clone();
    for (step, mv) in cert.moves.iter().enumerate() {
        cur = cur
            .apply_move(mv)
            .map_err(|source| EquivalenceError::Step { step: step + 1, source })?;
    }
    Ok(cur.tuples_equal(dst))
}

/// Conjugation-invariant signature for search-state bucketing. Every entry
/// automorphism preserves peripheral structure, so the image-class multiset
/// is invariant under global conjugation (as are the sp-matrix similarity
/// invariants); collisions are resolved by exact comparison before states
/// are merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitKey {
    entries: Vec<(Vec<Word>, i64, [i64; 5])>,
}

impl OrbitKey {
    pub fn of(f: &Factorization) -> OrbitKey {
        let entries = f
            .entries()
            .iter()
            .map(|e| {
                let mut images: Vec<Word> = e
                    .auto()
                    .images()
                    .iter()
                    .cloned()
                    .chain([e.auto().image_x6()])
                    .map(|w| w.conjugacy_key())
                    .collect();
                images.sort();
                (images, e.sp().trace(), e.sp().char_poly())
            })
            .collect();
        OrbitKey { entries }
    }
}

/// Search-state deduplication key: the tuple of freely reduced entry
/// words. Equal word tuples are equal states, so merging on this key is
/// always sound; states that are equal as mapping-class tuples but differ
/// as words are re-explored rather than merged, trading a somewhat larger
/// frontier for never having to build an automorphism during dedup (the
/// exact comparison grows multiplicatively with depth and dominates the
/// search when used on every collision).
fn word_key(f: &Factorization) -> Vec<Word> {
    f.entries().iter().map(|e| e.word.clone()).collect()
}

fn letters() -> [Letter; 10] {
    [
        Letter::new(1),
        Letter::inv(1),
        Letter::new(2),
        Letter::inv(2),
        Letter::new(3),
        Letter::inv(3),
        Letter::new(4),
        Letter::inv(4),
        Letter::new(5),
        Letter::inv(5),
    ]
}

fn state_cap() -> usize {
    std::env::var("MCG2_STATE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1_000_000)
}

/// All reduced twist words of length 1..=budget, shortest first and in a
/// fixed lexicographic order, for the root conjugations of the search.
fn conjugator_words(budget: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut frontier: Vec<Word> = vec![Word::identity(Alphabet::Twist)];
    for _ in 0..budget {
        let mut next = Vec::new();
        for w in &frontier {
            for l in letters() {
                let ext = w
                    .concat(&Word::reduce(Alphabet::Twist, [l]).expect("letter in range"))
                    .expect("same alphabet");
                if ext.len() == w.len() + 1 {
                    next.push(ext);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Breadth-first search for a certificate from `src` to `dst`: Hurwitz
/// moves and cyclic shifts, with global conjugations (up to the word-length
/// budget) tried only at the root. Ok(None) means exhausted within bounds —
/// not inequivalence.
pub fn search_equivalence(
    src: &Factorization,
    dst: &Factorization,
    max_depth: usize,
    conjugator_budget: usize,
) -> Result<Option<MoveCertificate>, EquivalenceError> {
    let cap = state_cap();
    if src.len() != dst.len() {
        return Ok(None);
    }
    if src.tuples_equal(dst) {
        return Ok(Some(MoveCertificate::default()));
    }

    let mut roots: Vec<(Factorization, MoveCertificate)> =
        vec![(src.clone(), MoveCertificate::default())];
    for u in conjugator_words(conjugator_budget) {
        let mv = Move::GlobalConjugate(u);
        let f = src.apply_move(&mv).expect("conjugation always applies");
        roots.push((f, MoveCertificate::new(vec![mv])));
    }

    let len = src.len();
    let mut moves: Vec<Move> = Vec::new();
    for i in 1..len {
        moves.push(Move::HurwitzLeft(i));
    }
    for i in 1..len {
        moves.push(Move::HurwitzRight(i));
    }
    for k in 1..len {
        moves.push(Move::CyclicShift(k));
    }

    let mut seen: HashSet<Vec<Word>> = HashSet::new();
    let mut states = 0usize;
    let mut record = |f: &Factorization,
                      states: &mut usize|
     -> Result<bool, EquivalenceError> {
        if !seen.insert(word_key(f)) {
            return Ok(false);
        }
        *states += 1;
        if *states > cap {
            return Err(EquivalenceError::ResourceLimit { cap });
        }
        Ok(true)
    };

    let mut frontier: Vec<(Factorization, MoveCertificate)> = Vec::new();
    for (f, cert) in roots {
        if f.tuples_equal(dst) {
            return Ok(Some(cert));
        }
        if record(&f, &mut states)? {
            frontier.push((f, cert));
        }
    }

    for _depth in 1..=max_depth {
        let mut next = Vec::new();
        for (f, cert) in &frontier {
            for mv in &moves {
                let g = f.apply_move(mv).expect("enumerated moves are in range");
                if g.tuples_equal(dst) {
                    let mut out = cert.clone();
                    out.moves.push(mv.clone());
                    return Ok(Some(out));
                }
                if !record(&g, &mut states)? {
                    continue;
                }
                let mut out = cert.clone();
                out.moves.push(mv.clone());
                next.push((g, out));
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        frontier = next;
    }
    Ok(None)
}
