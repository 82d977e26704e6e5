//! Free-group word arithmetic shared by every other module.
//!
//! Words are stored freely reduced and are immutable values. Two alphabets
//! coexist: the twist alphabet t1..t5 (chain Dehn twists, which evaluate to
//! half-twists downstairs) and the puncture alphabet x1..x5 (generators of
//! the fundamental group of the 6-punctured sphere; x6 is always derived,
//! never stored). Mixing alphabets is an error at operation boundaries.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(Alphabet, Alphabet),
    #[error("letter index {0} outside alphabet (expected 1..=5)")]
    LetterOutOfRange(u8),
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    /// Chain twist generators t1..t5.
    Twist,
    /// Puncture loop generators x1..x5.
    Puncture,
}

impl Alphabet {
    pub const RANK: u8 = 5;

    pub fn prefix(self) -> char {
        match self {
            Alphabet::Twist => 't',
            Alphabet::Puncture => 'x',
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Twist => write!(f, "twist"),
            Alphabet::Puncture => write!(f, "puncture"),
        }
    }
}

/// A single generator or its inverse. Ordering is by index, positive
/// before negative; this is the fixed total order used for canonical
/// rotations everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: u8) -> Letter {
        Letter { index, inverse: false }
    }

    pub fn inv(index: u8) -> Letter {
        Letter { index, inverse: true }
    }

    pub fn inverted(self) -> Letter {
        Letter { index: self.index, inverse: !self.inverse }
    }

    /// Signed shorthand: +i for a generator, -i for its inverse.
    pub fn from_signed(i: i8) -> Letter {
        if i < 0 {
            Letter::inv((-i) as u8)
        } else {
            Letter::new(i as u8)
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.inverse != other.inverse
    }
}

/// A freely reduced word over one alphabet. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last().is_some_and(|last| last.cancels(l)) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl Word {
    pub fn identity(alphabet: Alphabet) -> Word {
        Word { alphabet, letters: Vec::new() }
    }

    /// Free reduction of a raw letter sequence. Idempotent; never lengthens.
    pub fn reduce(
        alphabet: Alphabet,
        raw: impl IntoIterator<Item = Letter>,
    ) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for l in raw {
            if l.index == 0 || l.index > Alphabet::RANK {
                return Err(WordError::LetterOutOfRange(l.index));
            }
            push_reduced(&mut letters, l);
        }
        Ok(Word { alphabet, letters })
    }

    /// Convenience constructor from signed indices (+i / -i).
    pub fn from_signed(alphabet: Alphabet, signed: &[i8]) -> Result<Word, WordError> {
        Word::reduce(alphabet, signed.iter().copied().map(Letter::from_signed))
    }

    pub fn generator(alphabet: Alphabet, index: u8) -> Result<Word, WordError> {
        Word::reduce(alphabet, [Letter::new(index)])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if self.alphabet != other.alphabet {
            return Err(WordError::AlphabetMismatch(self.alphabet, other.alphabet));
        }
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word { alphabet: self.alphabet, letters })
    }

    pub fn invert(&self) -> Word {
        // inverse of a reduced word is already reduced
        let letters = self.letters.iter().rev().map(|l| l.inverted()).collect();
        Word { alphabet: self.alphabet, letters }
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let reps = n.unsigned_abs() as usize;
        if reps == 0 || base.is_empty() {
            return Word::identity(self.alphabet);
        }
        // (c r c^-1)^n = c r^n c^-1 and the cyclically reduced core
        // repeats literally, so no quadratic re-reduction is needed
        let (core, conj) = base.cyclic_reduce();
        let mut letters = Vec::with_capacity(core.len() * reps + 2 * conj.len());
        letters.extend_from_slice(conj.letters());
        for _ in 0..reps {
            letters.extend_from_slice(core.letters());
        }
        letters.extend(conj.invert().letters().iter().copied());
        Word { alphabet: self.alphabet, letters }
    }

    /// self conjugated by `by`: by . self . by^-1.
    pub fn conjugated_by(&self, by: &Word) -> Result<Word, WordError> {
        by.concat(self)?.concat(&by.invert())
    }

    /// Splits self = conjugator . core . conjugator^-1 with the core
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut letters = self.letters.clone();
        let mut conj = Vec::new();
        while letters.len() >= 2 && letters[0].cancels(*letters.last().unwrap()) {
            conj.push(letters.remove(0));
            letters.pop();
        }
        (
            Word { alphabet: self.alphabet, letters },
            Word { alphabet: self.alphabet, letters: conj },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.letters.len() < 2 || !self.letters[0].cancels(*self.letters.last().unwrap())
    }

    pub fn rotated(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { alphabet: self.alphabet, letters }
    }

    /// The lexicographically least rotation under the fixed letter order.
    pub fn min_cyclic_rotation(&self) -> Result<Word, WordError> {
        if !self.is_cyclically_reduced() {
            return Err(WordError::NotCyclicallyReduced);
        }
        let mut best = self.clone();
        for k in 1..self.letters.len() {
            let rot = self.rotated(k);
            if rot.letters < best.letters {
                best = rot;
            }
        }
        Ok(best)
    }

    /// Conjugacy-class key: min rotation of the cyclic core.
    pub fn conjugacy_key(&self) -> Word {
        let (core, _) = self.cyclic_reduce();
        core.min_cyclic_rotation().expect("core is cyclically reduced")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tw(signed: &[i8]) -> Word {
        Word::from_signed(Alphabet::Twist, signed).unwrap()
    }

    #[test]
    fn reduce_cancels_adjacent_inverses() {
        let raw = [Letter::new(1), Letter::inv(1), Letter::new(2)];
        let w = Word::reduce(Alphabet::Twist, raw).unwrap();
        assert_eq!(w, tw(&[2]));
    }

    #[test]
    fn reduce_empty_is_identity() {
        let w = Word::reduce(Alphabet::Twist, []).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn reduce_single_inner_cancellation() {
        assert_eq!(tw(&[1, 2, -2, 1]), tw(&[1, 1]));
    }

    #[test]
    fn reduce_rejects_out_of_range() {
        let err = Word::reduce(Alphabet::Twist, [Letter::new(6)]).unwrap_err();
        assert_eq!(err, WordError::LetterOutOfRange(6));
    }

    #[test]
    fn concat_cancels() {
        assert_eq!(tw(&[1]).concat(&tw(&[-1])).unwrap(), tw(&[]));
        assert_eq!(tw(&[1, 2]).concat(&tw(&[])).unwrap(), tw(&[1, 2]));
        assert_eq!(tw(&[1, 2]).concat(&tw(&[-2, 3])).unwrap(), tw(&[1, 3]));
    }

    #[test]
    fn concat_rejects_alphabet_mix() {
        let x = Word::from_signed(Alphabet::Puncture, &[1]).unwrap();
        assert!(matches!(
            tw(&[1]).concat(&x),
            Err(WordError::AlphabetMismatch(_, _))
        ));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(tw(&[1, 2]).invert(), tw(&[-2, -1]));
        assert_eq!(tw(&[]).invert(), tw(&[]));
        assert_eq!(tw(&[1, 1]).invert(), tw(&[-1, -1]));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = tw(&[1, 2, -1]).cyclic_reduce();
        assert_eq!((core, conj), (tw(&[2]), tw(&[1])));
        let (core, conj) = tw(&[2]).cyclic_reduce();
        assert_eq!((core, conj), (tw(&[2]), tw(&[])));
        let (core, conj) = tw(&[1, 2, 2, -1]).cyclic_reduce();
        assert_eq!((core, conj), (tw(&[2, 2]), tw(&[1])));
    }

    #[test]
    fn cyclic_reduce_remultiplies_to_input() {
        let w = tw(&[1, 3, -2, 2, 4, -3, -1]);
        let (core, conj) = w.cyclic_reduce();
        assert_eq!(core.conjugated_by(&conj).unwrap(), w);
    }

    #[test]
    fn min_cyclic_rotation_examples() {
        assert_eq!(tw(&[2, 1]).min_cyclic_rotation().unwrap(), tw(&[1, 2]));
        assert_eq!(tw(&[1]).min_cyclic_rotation().unwrap(), tw(&[1]));
        assert_eq!(tw(&[2, 1, 2]).min_cyclic_rotation().unwrap(), tw(&[1, 2, 2]));
    }

    #[test]
    fn min_cyclic_rotation_requires_cyclically_reduced() {
        assert_eq!(
            tw(&[1, 2, -1]).min_cyclic_rotation().unwrap_err(),
            WordError::NotCyclicallyReduced
        );
    }
}
