//! Positive factorizations as ordered tuples of twist words, with the
//! elementary moves (Hurwitz transpositions, cyclic shifts, global
//! conjugation) that preserve the product up to conjugacy.

use crate::homology::{sp_of_word, SpMatrix};
use crate::mcg::{evaluate_word, perm_of_word, Convention, MappingClass, Pi1Auto, PuncturePerm};
use crate::word::{Alphabet, Word, WordError};
use std::cell::OnceCell;
use std::rc::Rc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorizationError {
    #[error("move position {index} out of range for a factorization of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cyclic shift by {amount} invalid for length {len} (need 1 <= k < len)")]
    BadShift { amount: usize, len: usize },
    #[error("factorization must be nonempty")]
    Empty,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// How an entry's automorphism is produced when it is finally forced.
/// Entries created by moves are conjugates of a parent entry; composing the
/// parent's cached automorphism with the conjugator's is far cheaper than
/// evaluating the rewritten word letter by letter, which walks through
/// partially-composed automorphisms whose images can be enormous even when
/// the final conjugate is tame.
#[derive(Debug, Clone)]
enum AutoSrc {
    /// Evaluate the stored word directly.
    Word,
    /// by . base . by^-1, with the conjugator inverted when `invert_by`;
    /// both sides are earlier entries whose cached automorphisms are shared.
    Conj {
        by: Rc<Entry>,
        invert_by: bool,
        base: Rc<Entry>,
    },
    /// u . base . u^-1 for a (short) global-conjugation word u.
    ConjWord { u: Word, base: Rc<Entry> },
}

/// One factor: its twist word plus the curve name when the factor came in
/// as a bare "@name". The symplectic matrix and puncture permutation are
/// computed eagerly (both are cheap scans of the word); the descended
/// automorphism is built on demand, since move application only rewrites
/// words and the automorphism is needed solely to confirm equality.
#[derive(Debug, Clone)]
pub struct Entry {
    pub name: Option<String>,
    pub word: Word,
    conv: Convention,
    sp: SpMatrix,
    perm: PuncturePerm,
    auto: OnceCell<Pi1Auto>,
    src: AutoSrc,
}

impl Entry {
    fn new(name: Option<String>, word: Word, conv: Convention) -> Entry {
        Entry::with_src(name, word, conv, AutoSrc::Word)
    }

    fn with_src(name: Option<String>, word: Word, conv: Convention, src: AutoSrc) -> Entry {
        let sp = sp_of_word(&word);
        let perm = perm_of_word(&word);
        Entry { name, word, conv, sp, perm, auto: OnceCell::new(), src }
    }

    pub fn sp(&self) -> &SpMatrix {
        &self.sp
    }

    pub fn perm(&self) -> &PuncturePerm {
        &self.perm
    }

    pub fn auto(&self) -> &Pi1Auto {
        self.auto.get_or_init(|| match &self.src {
            AutoSrc::Word => evaluate_word(&self.word, self.conv).auto,
            AutoSrc::Conj { by, invert_by, base } => {
                let c = if *invert_by {
                    by.auto().inverse_unchecked()
                } else {
                    by.auto().clone()
                };
                c.compose(base.auto()).compose(&c.inverse_unchecked())
            }
            AutoSrc::ConjWord { u, base } => {
                let c = evaluate_word(u, self.conv).auto;
                c.compose(base.auto()).compose(&c.inverse_unchecked())
            }
        })
    }

    pub fn class(&self) -> MappingClass {
        MappingClass { auto: self.auto().clone(), sp: self.sp }
    }

    pub fn is_separating(&self) -> bool {
        self.sp.is_identity()
    }

    /// Equality as mapping classes; identical words short-circuit the
    /// automorphism comparison.
    pub fn equals(&self, other: &Entry) -> bool {
        self.sp == other.sp
            && self.perm == other.perm
            && (self.word == other.word || self.auto().inner_equal(other.auto()))
    }
}

/// Counts of nonseparating (n) and separating (s) factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorizationType {
    pub n: usize,
    pub s: usize,
}

impl std::fmt::Display for FactorizationType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.n, self.s)
    }
}

/// Elementary moves on a factorization. Positions are 1-based; a Hurwitz
/// move at position i acts on the adjacent pair (i, i+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// (A, B) -> (A B A^-1, A)
    HurwitzLeft(usize),
    /// (A, B) -> (B, B^-1 A B)
    HurwitzRight(usize),
    /// Rotate the tuple left by k: (e1..ek ek+1..em) -> (ek+1..em e1..ek).
    CyclicShift(usize),
    /// Conjugate every factor by the same word u: A -> u A u^-1.
    GlobalConjugate(Word),
}

impl Move {
    /// The move undoing self on a factorization of length `len`.
    pub fn inverse(&self, len: usize) -> Move {
        match self {
            Move::HurwitzLeft(i) => Move::HurwitzRight(*i),
            Move::HurwitzRight(i) => Move::HurwitzLeft(*i),
            Move::CyclicShift(k) => Move::CyclicShift(len - k),
            Move::GlobalConjugate(u) => Move::GlobalConjugate(u.invert()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Factorization {
    entries: Vec<Rc<Entry>>,
    product: OnceCell<MappingClass>,
    convention: Convention,
}

impl Factorization {
    pub fn from_words(
        words: Vec<(Option<String>, Word)>,
        convention: Convention,
    ) -> Result<Factorization, FactorizationError> {
        if words.is_empty() {
            return Err(FactorizationError::Empty);
        }
        for (_, w) in &words {
            if w.alphabet() != Alphabet::Twist {
                return Err(WordError::AlphabetMismatch(Alphabet::Twist, w.alphabet()).into());
            }
        }
        let entries: Vec<Rc<Entry>> = words
            .into_iter()
            .map(|(name, word)| Rc::new(Entry::new(name, word, convention)))
            .collect();
        Ok(Factorization {
            entries,
            product: OnceCell::new(),
            convention,
        })
    }

    fn product_of(entries: &[Rc<Entry>]) -> MappingClass {
        // leftmost factor applied last, so the product composes in
        // written order
        entries
            .iter()
            .fold(MappingClass::identity(), |acc, e| acc.compose(&e.class()))
    }

    pub fn entries(&self) -> &[Rc<Entry>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn product(&self) -> &MappingClass {
        self.product.get_or_init(|| Self::product_of(&self.entries))
    }

    pub fn is_identity(&self) -> bool {
        self.product().is_identity_mod2()
    }

    pub fn classify(&self) -> FactorizationType {
        let s = self.entries.iter().filter(|e| e.is_separating()).count();
        FactorizationType { n: self.entries.len() - s, s }
    }

    /// Entrywise equality as tuples of mapping classes (names ignored).
    /// Screens every pair on the cheap homology/permutation invariants
    /// before any automorphism comparison, so a tuple that differs in a
    /// later entry never pays for confirming an earlier one.
    pub fn tuples_equal(&self, other: &Factorization) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.sp() == b.sp() && a.perm() == b.perm())
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.equals(b))
    }

    pub fn apply_move(&self, mv: &Move) -> Result<Factorization, FactorizationError> {
        let len = self.entries.len();
        let mut out = self.clone();
        match mv {
            Move::HurwitzLeft(i) | Move::HurwitzRight(i) => {
                if *i == 0 || *i >= len {
                    return Err(FactorizationError::IndexOutOfRange { index: *i, len });
                }
                let a = out.entries[i - 1].clone();
                let b = out.entries[*i].clone();
                let (first, second) = match mv {
                    Move::HurwitzLeft(_) => {
                        let word = b.word.conjugated_by(&a.word)?;
                        let src = AutoSrc::Conj { by: a.clone(), invert_by: false, base: b };
                        (Rc::new(Entry::with_src(None, word, self.convention, src)), a)
                    }
                    _ => {
                        let word = a.word.conjugated_by(&b.word.invert())?;
                        let src = AutoSrc::Conj { by: b.clone(), invert_by: true, base: a };
                        (b, Rc::new(Entry::with_src(None, word, self.convention, src)))
                    }
                };
                out.entries[i - 1] = first;
                out.entries[*i] = second;
                // Hurwitz moves preserve the product exactly
            }
            Move::CyclicShift(k) => {
                if *k == 0 || *k >= len {
                    return Err(FactorizationError::BadShift { amount: *k, len });
                }
                out.entries.rotate_left(*k);
                // recomputed lazily; a rotation conjugates the product,
                // which in particular preserves triviality
                out.product = OnceCell::new();
            }
            Move::GlobalConjugate(u) => {
                if u.alphabet() != Alphabet::Twist {
                    return Err(
                        WordError::AlphabetMismatch(Alphabet::Twist, u.alphabet()).into()
                    );
                }
                for e in &mut out.entries {
                    let word = e.word.conjugated_by(u)?;
                    let src = AutoSrc::ConjWord { u: u.clone(), base: e.clone() };
                    *e = Rc::new(Entry::with_src(None, word, self.convention, src));
                }
                out.product = OnceCell::new();
                if let Some(p) = self.product.get() {
                    let u_class = evaluate_word(u, self.convention);
                    let _ = out.product.set(u_class.compose(p).compose(&u_class.inverse()));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tw(s: &[i8]) -> Word {
        Word::from_signed(Alphabet::Twist, s).unwrap()
    }

    fn fact(words: &[&[i8]]) -> Factorization {
        let entries = words.iter().map(|w| (None, tw(w))).collect();
        Factorization::from_words(entries, Convention::Standard).unwrap()
    }

    #[test]
    fn product_and_type() {
        // (t1 t2)^6 followed by its inverse is the identity with one
        // separating and one nonseparating-looking factor
        let f = fact(&[&[1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2], &[-2, -1, -2, -1, -2, -1, -2, -1, -2, -1, -2, -1]]);
        assert!(f.is_identity());
        assert_eq!(f.classify(), FactorizationType { n: 0, s: 2 });
    }

    #[test]
    fn hurwitz_moves_preserve_product_and_invert() {
        let f = fact(&[&[1], &[2], &[3], &[4]]);
        for i in 1..4 {
            let g = f.apply_move(&Move::HurwitzLeft(i)).unwrap();
            assert!(g.product().equals(f.product()));
            let back = g.apply_move(&Move::HurwitzLeft(i).inverse(4)).unwrap();
            assert!(back.tuples_equal(&f));
        }
    }

    #[test]
    fn hurwitz_left_semantics() {
        let f = fact(&[&[1], &[2]]);
        let g = f.apply_move(&Move::HurwitzLeft(1)).unwrap();
        assert_eq!(g.entries()[0].word, tw(&[1, 2, -1]));
        assert_eq!(g.entries()[1].word, tw(&[1]));
    }

    #[test]
    fn cyclic_shift_rotates_and_inverts() {
        let f = fact(&[&[1], &[2], &[3]]);
        let g = f.apply_move(&Move::CyclicShift(1)).unwrap();
        assert_eq!(g.entries()[0].word, tw(&[2]));
        assert_eq!(g.entries()[2].word, tw(&[1]));
        let back = g.apply_move(&Move::CyclicShift(1).inverse(3)).unwrap();
        assert!(back.tuples_equal(&f));
    }

    #[test]
    fn global_conjugation_inverts() {
        let f = fact(&[&[1], &[2], &[3]]);
        let u = tw(&[-1, -1, 5]);
        let g = f.apply_move(&Move::GlobalConjugate(u.clone())).unwrap();
        assert_eq!(g.entries()[1].word, tw(&[2]).conjugated_by(&u).unwrap());
        let back = g
            .apply_move(&Move::GlobalConjugate(u).inverse(3))
            .unwrap();
        assert!(back.tuples_equal(&f));
    }

    #[test]
    fn move_errors() {
        let f = fact(&[&[1], &[2]]);
        assert!(matches!(
            f.apply_move(&Move::HurwitzLeft(2)),
            Err(FactorizationError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            f.apply_move(&Move::CyclicShift(2)),
            Err(FactorizationError::BadShift { .. })
        ));
        assert!(matches!(
            f.apply_move(&Move::CyclicShift(0)),
            Err(FactorizationError::BadShift { .. })
        ));
    }

    #[test]
    fn empty_rejected() {
        assert!(matches!(
            Factorization::from_words(Vec::new(), Convention::Standard),
            Err(FactorizationError::Empty)
        ));
    }
}
