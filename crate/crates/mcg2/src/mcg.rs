//! The mapping class group of the 6-punctured sphere acting on the rank-5
//! free group, paired with the symplectic representation upstairs.
//!
//! A chain twist t_i on the genus-2 surface descends to the half-twist w_i
//! exchanging punctures i and i+1; a separating twist descends to the square
//! of a twist. The kernel of the descent is generated by the hyperelliptic
//! involution, which acts as -I on homology, so a twist word is trivial in
//! Mod_2 exactly when its downstairs automorphism is inner with trivial
//! puncture permutation and its symplectic image is the identity.
//!
//! Faithfulness assumption (Dehn-Nielsen-Baer for punctured surfaces): a
//! mapping class of the 6-punctured sphere is trivial iff its outer action
//! on the fundamental group is trivial. The braid-relation suite is the
//! smoke test for this and for the handedness convention.
//!
//! Composition order: the leftmost twist in a displayed product is applied
//! last, i.e. a word evaluates to f(l1) . f(l2) . ... as function composition.

use crate::homology::{sp_of_word, SpMatrix};
use crate::word::{Alphabet, Word, WordError};
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum McgError {
    #[error("generator index {0} out of range (expected 1..=5)")]
    IndexOutOfRange(u8),
    #[error("automorphism has no inverse: corrupted non-automorphism value")]
    CorruptedAutomorphism,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Handedness convention for the half-twist generators. `Standard` is the
/// Artin substitution x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i, and
/// `Mirrored` is its inverse; which one is "right-handed" depends on
/// orientation conventions that differ across sources. The acceptance
/// suite reports which convention validates the identity suite (Standard
/// does).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    #[default]
    Standard,
    Mirrored,
}

impl Convention {
    pub fn mirrored(self) -> Convention {
        match self {
            Convention::Standard => Convention::Mirrored,
            Convention::Mirrored => Convention::Standard,
        }
    }
}

/// A permutation of the 6 punctures, 1-based images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PuncturePerm([u8; 6]);

impl PuncturePerm {
    pub const IDENTITY: PuncturePerm = PuncturePerm([1, 2, 3, 4, 5, 6]);

    pub fn transposition(i: u8, j: u8) -> PuncturePerm {
        let mut p = PuncturePerm::IDENTITY;
        p.0.swap((i - 1) as usize, (j - 1) as usize);
        p
    }

    pub fn image(&self, i: u8) -> u8 {
        self.0[(i - 1) as usize]
    }

    pub fn is_identity(&self) -> bool {
        *self == PuncturePerm::IDENTITY
    }

    /// self after other (function composition).
    pub fn compose(&self, other: &PuncturePerm) -> PuncturePerm {
        let mut out = [0u8; 6];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.image(other.0[i]);
        }
        PuncturePerm(out)
    }

    pub fn inverse(&self) -> PuncturePerm {
        let mut out = [0u8; 6];
        for (i, &v) in self.0.iter().enumerate() {
            out[(v - 1) as usize] = (i + 1) as u8;
        }
        PuncturePerm(out)
    }

    /// Cycle lengths in decreasing order; conjugation invariant.
    pub fn cycle_type(&self) -> Vec<u8> {
        let mut seen = [false; 6];
        let mut cycles = Vec::new();
        for start in 1..=6u8 {
            if seen[(start - 1) as usize] {
                continue;
            }
            let mut len = 0u8;
            let mut i = start;
            while !seen[(i - 1) as usize] {
                seen[(i - 1) as usize] = true;
                len += 1;
                i = self.image(i);
            }
            cycles.push(len);
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        cycles
    }
}

/// The word x6 = (x1 x2 x3 x4 x5)^-1; the sixth puncture loop is always
/// derived so the surface relation holds by construction.
pub fn x6_word() -> Word {
    Word::from_signed(Alphabet::Puncture, &[-5, -4, -3, -2, -1]).expect("static word")
}

/// A peripheral-structure-preserving automorphism of the rank-5 free group.
/// Both directions are stored so that inversion is exact and cheap; the
/// inverse direction is maintained by construction and re-verified on
/// `inverse()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pi1Auto {
    images: [Word; 5],
    inv_images: [Word; 5],
    perm: PuncturePerm,
}

fn identity_images() -> [Word; 5] {
    [1i8, 2, 3, 4, 5].map(|i| Word::from_signed(Alphabet::Puncture, &[i]).expect("static"))
}

fn artin_images(i: u8, conv: Convention) -> [Word; 5] {
    let mut images = identity_images();
    let xi = |s: &[i8]| Word::from_signed(Alphabet::Puncture, s).expect("static");
    match conv {
        Convention::Standard => {
            if i <= 4 {
                let (a, b) = (i as i8, (i + 1) as i8);
                images[(i - 1) as usize] = xi(&[a, b, -a]);
                images[i as usize] = xi(&[a]);
            } else {
                // w5 involves the derived x6: x5 -> x5 x6 x5^-1
                images[4] = xi(&[5])
                    .concat(&x6_word())
                    .and_then(|w| w.concat(&xi(&[-5])))
                    .expect("static");
            }
        }
        Convention::Mirrored => {
            if i <= 4 {
                let (a, b) = (i as i8, (i + 1) as i8);
                images[(i - 1) as usize] = xi(&[b]);
                images[i as usize] = xi(&[-b, a, b]);
            } else {
                // x5 -> x6
                images[4] = x6_word();
            }
        }
    }
    images
}

impl Pi1Auto {
    pub fn identity() -> Pi1Auto {
        Pi1Auto {
            images: identity_images(),
            inv_images: identity_images(),
            perm: PuncturePerm::IDENTITY,
        }
    }

    /// The half-twist exchanging punctures i and i+1 (the image of the chain
    /// twist t_i under the hyperelliptic quotient).
    pub fn generator_halftwist(i: u8, conv: Convention) -> Result<Pi1Auto, McgError> {
        if i == 0 || i > 5 {
            return Err(McgError::IndexOutOfRange(i));
        }
        Ok(Pi1Auto {
            images: artin_images(i, conv),
            inv_images: artin_images(i, conv.mirrored()),
            perm: PuncturePerm::transposition(i, i + 1),
        })
    }

    /// Conjugation by w: x -> w x w^-1. Represents the trivial mapping class.
    pub fn inner(w: &Word) -> Pi1Auto {
        let conj = |by: &Word| -> [Word; 5] {
            identity_images().map(|x| x.conjugated_by(by).expect("same alphabet"))
        };
        Pi1Auto {
            images: conj(w),
            inv_images: conj(&w.invert()),
            perm: PuncturePerm::IDENTITY,
        }
    }

    pub fn puncture_perm(&self) -> &PuncturePerm {
        &self.perm
    }

    /// Image of generator x_i, i in 1..=5.
    pub fn image(&self, i: u8) -> &Word {
        &self.images[(i - 1) as usize]
    }

    pub fn images(&self) -> &[Word; 5] {
        &self.images
    }

    /// Image of the derived loop x6.
    pub fn image_x6(&self) -> Word {
        self.apply(&x6_word())
    }

    /// Substitutes generator images through self, freely reducing as it goes.
    pub fn apply(&self, w: &Word) -> Word {
        apply_images(&self.images, w)
    }

    pub fn apply_inv(&self, w: &Word) -> Word {
        apply_images(&self.inv_images, w)
    }

    /// self after other (function composition).
    pub fn compose(&self, other: &Pi1Auto) -> Pi1Auto {
        Pi1Auto {
            images: other.images.clone().map(|w| self.apply(&w)),
            inv_images: self.inv_images.clone().map(|w| other.apply_inv(&w)),
            perm: self.perm.compose(&other.perm),
        }
    }

    /// The inverse automorphism. Re-verifies that the stored inverse
    /// direction actually inverts self; failure signals a corrupted value.
    pub fn inverse(&self) -> Result<Pi1Auto, McgError> {
        let inv = Pi1Auto {
            images: self.inv_images.clone(),
            inv_images: self.images.clone(),
            perm: self.perm.inverse(),
        };
        let check = self.compose(&inv);
        if check.perm.is_identity() && check.inner_witness().is_some() {
            Ok(inv)
        } else {
            Err(McgError::CorruptedAutomorphism)
        }
    }

    /// Peripheral structure check: every induced image of x_1..x_6 must be
    /// conjugate to the loop around the image puncture.
    pub fn preserves_peripheral_structure(&self) -> bool {
        let target = |i: u8| -> Word {
            if i <= 5 {
                Word::from_signed(Alphabet::Puncture, &[i as i8]).expect("static")
            } else {
                x6_word()
            }
        };
        (1..=6u8).all(|i| {
            let img = if i <= 5 { self.image(i).clone() } else { self.image_x6() };
            img.conjugacy_key() == target(self.perm.image(i)).conjugacy_key()
        })
    }

    /// Decides whether self is conjugation by some word with trivial
    /// puncture permutation, returning the witness conjugator.
    ///
    /// The centralizer of x1 is the cyclic group it generates, so if
    /// f(x1) = u x1 u^-1 then any witness has the form u x1^k; k is pinned
    /// by the bounded equation x1^-k (u^-1 f(x2) u) x1^k = x2 and the
    /// winning candidate is re-verified on every generator.
    pub fn inner_witness(&self) -> Option<Word> {
        if !self.perm.is_identity() {
            return None;
        }
        let x1 = Word::from_signed(Alphabet::Puncture, &[1]).expect("static");
        let (core, u) = self.image(1).cyclic_reduce();
        if core != x1 {
            return None;
        }
        let v = self.image(2).conjugated_by(&u.invert()).expect("same alphabet");
        // x1^-k v x1^k = x2 forces v to be literally x1^k x2 x1^-k (no
        // reduction is possible in that word), so read k off v directly.
        let k = match v.len() {
            0 => return None,
            n if n % 2 == 0 => return None,
            n => {
                let half = (n - 1) / 2;
                let letters = v.letters();
                let mid = letters[half];
                if mid.index != 2 || mid.inverse {
                    return None;
                }
                let first = letters[0];
                if half > 0 && first.index != 1 {
                    return None;
                }
                let prefix_ok = letters[..half].iter().all(|l| *l == first);
                let suffix_ok = letters[half + 1..].iter().all(|l| *l == first.inverted());
                if !prefix_ok || !suffix_ok {
                    return None;
                }
                if first.inverse {
                    -(half as i32)
                } else {
                    half as i32
                }
            }
        };
        let w = u.concat(&x1.pow(k)).expect("same alphabet");
        let ok = (1..=5u8).all(|i| {
            let xi = Word::from_signed(Alphabet::Puncture, &[i as i8]).expect("static");
            *self.image(i) == xi.conjugated_by(&w).expect("same alphabet")
        });
        if ok {
            Some(w)
        } else {
            None
        }
    }

    pub fn is_inner_trivial(&self) -> bool {
        self.inner_witness().is_some()
    }

    /// True when self and other differ by an inner automorphism (equal as
    /// mapping classes of the punctured sphere).
    pub fn inner_equal(&self, other: &Pi1Auto) -> bool {
        self.compose(&other.inverse_unchecked()).inner_witness().is_some()
    }

    /// Structural inverse without the verification pass; used on the hot
    /// paths where values come straight from the checked constructors.
    pub fn inverse_unchecked(&self) -> Pi1Auto {
        Pi1Auto {
            images: self.inv_images.clone(),
            inv_images: self.images.clone(),
            perm: self.perm.inverse(),
        }
    }
}

fn apply_images(images: &[Word; 5], w: &Word) -> Word {
    assert_eq!(w.alphabet(), Alphabet::Puncture, "can only apply to puncture words");
    let mut out = Word::identity(Alphabet::Puncture);
    for l in w.letters() {
        let img = &images[(l.index - 1) as usize];
        let seg = if l.inverse { img.invert() } else { img.clone() };
        out = out.concat(&seg).expect("same alphabet");
    }
    out
}

fn generators(conv: Convention) -> &'static ([Pi1Auto; 5], [Pi1Auto; 5]) {
    static STD: OnceLock<([Pi1Auto; 5], [Pi1Auto; 5])> = OnceLock::new();
    static MIR: OnceLock<([Pi1Auto; 5], [Pi1Auto; 5])> = OnceLock::new();
    let cell = match conv {
        Convention::Standard => &STD,
        Convention::Mirrored => &MIR,
    };
    cell.get_or_init(|| {
        let fwd = [1u8, 2, 3, 4, 5]
            .map(|i| Pi1Auto::generator_halftwist(i, conv).expect("static index"));
        let inv = fwd.clone().map(|g| g.inverse_unchecked());
        (fwd, inv)
    })
}

/// A mapping class of the genus-2 surface: the descended automorphism and
/// the symplectic matrix, both computed from the same twist word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MappingClass {
    pub auto: Pi1Auto,
    pub sp: SpMatrix,
}

impl MappingClass {
    pub fn identity() -> MappingClass {
        MappingClass { auto: Pi1Auto::identity(), sp: SpMatrix::IDENTITY }
    }

    pub fn compose(&self, other: &MappingClass) -> MappingClass {
        MappingClass {
            auto: self.auto.compose(&other.auto),
            sp: self.sp.mul(&other.sp),
        }
    }

    pub fn inverse(&self) -> MappingClass {
        MappingClass {
            auto: self.auto.inverse_unchecked(),
            sp: self.sp.inverse(),
        }
    }

    /// Trivial in Mod_2: inner downstairs with trivial permutation and
    /// identity on homology.
    pub fn is_identity_mod2(&self) -> bool {
        self.sp.is_identity() && self.auto.is_inner_trivial()
    }

    /// The nontrivial kernel element of the hyperelliptic quotient.
    pub fn is_hyperelliptic_involution(&self) -> bool {
        self.sp == SpMatrix::MINUS_IDENTITY && self.auto.is_inner_trivial()
    }

    /// Equality as mapping classes (up to inner automorphism downstairs).
    pub fn equals(&self, other: &MappingClass) -> bool {
        self.sp == other.sp && self.auto.inner_equal(&other.auto)
    }
}

/// Evaluates a fully expanded twist word to its mapping class, leftmost
/// twist applied last. Generator automorphisms are memoized per convention.
pub fn evaluate_word(word: &Word, conv: Convention) -> MappingClass {
    assert_eq!(word.alphabet(), Alphabet::Twist, "evaluate_word needs a twist word");
    let (fwd, inv) = generators(conv);
    let mut auto = Pi1Auto::identity();
    for l in word.letters() {
        let g = if l.inverse {
            &inv[(l.index - 1) as usize]
        } else {
            &fwd[(l.index - 1) as usize]
        };
        auto = auto.compose(g);
    }
    MappingClass { auto, sp: sp_of_word(word) }
}

/// The puncture permutation induced by a twist word, computed without
/// building the automorphism (either handedness of a half-twist about c_i
/// swaps punctures i and i+1).
pub fn perm_of_word(word: &Word) -> PuncturePerm {
    assert_eq!(word.alphabet(), Alphabet::Twist, "perm_of_word needs a twist word");
    let mut perm = PuncturePerm::IDENTITY;
    for l in word.letters() {
        perm = perm.compose(&PuncturePerm::transposition(l.index, l.index + 1));
    }
    perm
}

/// The standard hyperelliptic involution as a twist word.
pub fn iota_word() -> Word {
    Word::from_signed(Alphabet::Twist, &[1, 2, 3, 4, 5, 5, 4, 3, 2, 1]).expect("static")
}

pub use crate::word::Alphabet as WordAlphabet;

#[cfg(test)]
mod tests {
    use super::*;

    fn xw(signed: &[i8]) -> Word {
        Word::from_signed(Alphabet::Puncture, signed).unwrap()
    }

    fn tword(signed: &[i8]) -> Word {
        Word::from_signed(Alphabet::Twist, signed).unwrap()
    }

    #[test]
    fn halftwist_standard_action() {
        let w1 = Pi1Auto::generator_halftwist(1, Convention::Standard).unwrap();
        assert_eq!(*w1.image(1), xw(&[1, 2, -1]));
        assert_eq!(*w1.image(2), xw(&[1]));
        for i in 3..=5 {
            assert_eq!(*w1.image(i), xw(&[i as i8]));
        }
        assert_eq!(*w1.puncture_perm(), PuncturePerm::transposition(1, 2));
    }

    #[test]
    fn halftwist_index_out_of_range() {
        assert!(matches!(
            Pi1Auto::generator_halftwist(6, Convention::Standard),
            Err(McgError::IndexOutOfRange(6))
        ));
    }

    #[test]
    fn halftwist_composed_with_inverse_is_identity() {
        let w1 = Pi1Auto::generator_halftwist(1, Convention::Standard).unwrap();
        let c = w1.compose(&w1.inverse().unwrap());
        assert!(c.puncture_perm().is_identity());
        assert_eq!(c.inner_witness().unwrap(), Word::identity(Alphabet::Puncture));
    }

    #[test]
    fn halftwist_applied_twice() {
        // hand-composed: w1(w1(x2)) = w1(x1) = x1 x2 x1^-1
        let w1 = Pi1Auto::generator_halftwist(1, Convention::Standard).unwrap();
        let sq = w1.compose(&w1);
        assert_eq!(*sq.image(2), xw(&[1, 2, -1]));
    }

    #[test]
    fn compose_with_identity() {
        let f = Pi1Auto::generator_halftwist(3, Convention::Standard).unwrap();
        assert_eq!(Pi1Auto::identity().compose(&f), f);
        assert_eq!(f.compose(&Pi1Auto::identity()), f);
    }

    #[test]
    fn braid_relation_by_hand_substitution() {
        // w1 w2 w1 == w2 w1 w2: checked by substituting the generator images
        // by hand for x1, x2, x3 (independent of inner_equal).
        let w1 = Pi1Auto::generator_halftwist(1, Convention::Standard).unwrap();
        let w2 = Pi1Auto::generator_halftwist(2, Convention::Standard).unwrap();
        let lhs = w1.compose(&w2).compose(&w1);
        let rhs = w2.compose(&w1).compose(&w2);
        // hand computation: both send x1 -> x1x2x3x2^-1x1^-1, x2 -> x1x2x1^-1, x3 -> x1
        assert_eq!(*lhs.image(1), xw(&[1, 2, 3, -2, -1]));
        assert_eq!(*lhs.image(2), xw(&[1, 2, -1]));
        assert_eq!(*lhs.image(3), xw(&[1]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_of_halftwist_2() {
        // solve the substitution by hand: x2 -> x3, x3 -> x3^-1 x2 x3
        let w2 = Pi1Auto::generator_halftwist(2, Convention::Standard).unwrap();
        let inv = w2.inverse().unwrap();
        assert_eq!(*inv.image(2), xw(&[3]));
        assert_eq!(*inv.image(3), xw(&[-3, 2, 3]));
    }

    #[test]
    fn inner_witness_examples() {
        assert_eq!(
            Pi1Auto::identity().inner_witness().unwrap(),
            Word::identity(Alphabet::Puncture)
        );
        let w = xw(&[3, -1]);
        let f = Pi1Auto::inner(&w);
        assert_eq!(f.inner_witness().unwrap(), w);
        let g = Pi1Auto::generator_halftwist(1, Convention::Standard).unwrap();
        assert!(g.inner_witness().is_none()); // nontrivial permutation
    }

    #[test]
    fn inner_witness_reverifies() {
        let w = xw(&[2, 5, -1, 3]);
        let f = Pi1Auto::inner(&w);
        let witness = f.inner_witness().unwrap();
        for i in 1..=5u8 {
            let xi = xw(&[i as i8]);
            assert_eq!(*f.image(i), xi.conjugated_by(&witness).unwrap());
        }
    }

    #[test]
    fn generators_preserve_peripheral_structure() {
        for conv in [Convention::Standard, Convention::Mirrored] {
            for i in 1..=5 {
                let g = Pi1Auto::generator_halftwist(i, conv).unwrap();
                assert!(g.preserves_peripheral_structure(), "w{i} {conv:?}");
            }
        }
    }

    #[test]
    fn evaluate_trivial_word() {
        let m = evaluate_word(&tword(&[1, -1]), Convention::Standard);
        assert!(m.is_identity_mod2());
    }

    #[test]
    fn two_chain_relation() {
        // (t1 t2)^6 and (t3 t4)^6 are separating boundary twists: trivial on
        // homology, nontrivial downstairs.
        let m = evaluate_word(&tword(&[1, 2]).pow(6), Convention::Standard);
        assert!(m.sp.is_identity());
        assert!(!m.auto.is_inner_trivial());
    }

    #[test]
    fn hyperelliptic_split_soundness() {
        let chain = tword(&[1, 2, 3, 4, 5]);
        assert!(evaluate_word(&chain.pow(6), Convention::Standard).is_identity_mod2());
        let cube = evaluate_word(&chain.pow(3), Convention::Standard);
        assert!(!cube.is_identity_mod2());
        // downstairs the cube is the half rotation of the sphere
        assert_eq!(cube.auto.puncture_perm().cycle_type(), vec![2, 2, 2]);
    }

    #[test]
    fn iota_is_the_kernel_element() {
        let iota = evaluate_word(&iota_word(), Convention::Standard);
        assert!(iota.is_hyperelliptic_involution());
        assert!(!iota.is_identity_mod2());
        assert!(iota.compose(&iota).is_identity_mod2());
    }

    #[test]
    fn four_chain_relation() {
        let m = evaluate_word(&tword(&[1, 2, 3, 4]).pow(10), Convention::Standard);
        assert!(m.is_identity_mod2());
    }
}
