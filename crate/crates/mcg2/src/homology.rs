//! Symplectic representation of Mod_2 on first homology.
//!
//! Basis (a1, b1, a2, b2) with <a_k, b_k> = 1. Chain curves are sent to
//! c1 = a1, c2 = b1, c3 = a1 + a2, c4 = b2, c5 = a2, and a twist about a
//! class c acts by the transvection x -> x + <x, c> c. The basis is
//! validated by the chain intersection pattern and by the hyperelliptic
//! involution word t1 t2 t3 t4 t5 t5 t4 t3 t2 t1 mapping to -I.
//!
//! Entries use checked 64-bit arithmetic; overflow is a hard error rather
//! than a silent wraparound.

use crate::word::{Alphabet, Word};
use std::fmt;
use std::sync::OnceLock;

/// Standard symplectic form on (a1, b1, a2, b2).
const J: [[i64; 4]; 4] = [
    [0, 1, 0, 0],
    [-1, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, -1, 0],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HomologyClass(pub [i64; 4]);

impl HomologyClass {
    pub const ZERO: HomologyClass = HomologyClass([0; 4]);

    /// Algebraic intersection number <self, other> under the fixed form.
    pub fn pairing(&self, other: &HomologyClass) -> i64 {
        let mut acc: i64 = 0;
        for i in 0..4 {
            for j in 0..4 {
                acc = acc
                    .checked_add(
                        self.0[i]
                            .checked_mul(J[i][j])
                            .and_then(|v| v.checked_mul(other.0[j]))
                            .expect("overflow in symplectic pairing"),
                    )
                    .expect("overflow in symplectic pairing");
            }
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpMatrix(pub [[i64; 4]; 4]);

impl SpMatrix {
    pub const IDENTITY: SpMatrix = SpMatrix([
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ]);

    pub const MINUS_IDENTITY: SpMatrix = SpMatrix([
        [-1, 0, 0, 0],
        [0, -1, 0, 0],
        [0, 0, -1, 0],
        [0, 0, 0, -1],
    ]);

    pub fn is_identity(&self) -> bool {
        *self == SpMatrix::IDENTITY
    }

    pub fn mul(&self, other: &SpMatrix) -> SpMatrix {
        let mut out = [[0i64; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc: i64 = 0;
                for k in 0..4 {
                    acc = acc
                        .checked_add(
                            self.0[i][k]
                                .checked_mul(other.0[k][j])
                                .expect("overflow in symplectic matrix product"),
                        )
                        .expect("overflow in symplectic matrix product");
                }
                *cell = acc;
            }
        }
        SpMatrix(out)
    }

    pub fn transpose(&self) -> SpMatrix {
        let mut out = [[0i64; 4]; 4];
        for (i, row) in self.0.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[j][i] = v;
            }
        }
        SpMatrix(out)
    }

    /// M^T J M == J.
    pub fn is_symplectic(&self) -> bool {
        self.transpose().mul(&SpMatrix(J)).mul(self) == SpMatrix(J)
    }

    /// Exact inverse for symplectic matrices: M^-1 = J^-1 M^T J.
    pub fn inverse(&self) -> SpMatrix {
        let j = SpMatrix(J);
        let j_inv = j.transpose(); // J^-1 = -J = J^T
        j_inv.mul(&self.transpose()).mul(&j)
    }

    pub fn trace(&self) -> i64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    /// Coefficients of det(xI - M), highest degree first: [1, c3, c2, c1, c0].
    pub fn char_poly(&self) -> [i64; 5] {
        // Leibniz expansion over S4 with degree-4 polynomial coefficients;
        // exact and overflow-checked.
        let mut coeffs = [0i64; 5]; // index k = coefficient of x^(4-k)
        let perms = permutations4();
        for (perm, sign) in perms {
            // product over i of (x*delta - M)[i][perm[i]]
            let mut poly = vec![sign]; // constant polynomial = sign of perm
            for (i, &pi) in perm.iter().enumerate() {
                let diag = if i == pi { 1i64 } else { 0 };
                let cst = -self.0[i][pi];
                // multiply poly by (diag*x + cst)
                let mut next = vec![0i64; poly.len() + 1];
                for (d, &c) in poly.iter().enumerate() {
                    next[d] = next[d]
                        .checked_add(c.checked_mul(diag).expect("overflow in char poly"))
                        .expect("overflow in char poly");
                    next[d + 1] = next[d + 1]
                        .checked_add(c.checked_mul(cst).expect("overflow in char poly"))
                        .expect("overflow in char poly");
                }
                poly = next;
            }
            for (d, &c) in poly.iter().enumerate() {
                coeffs[d + (5 - poly.len())] = coeffs[d + (5 - poly.len())]
                    .checked_add(c)
                    .expect("overflow in char poly");
            }
        }
        coeffs
    }
}

impl fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{:3} {:3} {:3} {:3}]", row[0], row[1], row[2], row[3])?;
        }
        Ok(())
    }
}

fn permutations4() -> Vec<([usize; 4], i64)> {
    let mut out = Vec::with_capacity(24);
    let mut idx = [0usize, 1, 2, 3];
    heap_permute(&mut idx, 4, &mut out);
    out
}

fn heap_permute(a: &mut [usize; 4], k: usize, out: &mut Vec<([usize; 4], i64)>) {
    if k == 1 {
        out.push((*a, perm_sign(a)));
        return;
    }
    for i in 0..k {
        heap_permute(a, k - 1, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}

fn perm_sign(p: &[usize; 4]) -> i64 {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Dehn twist action on homology: x -> x + <x, c> c.
pub fn transvection(c: &HomologyClass) -> SpMatrix {
    let mut out = SpMatrix::IDENTITY.0;
    for j in 0..4 {
        let mut e = [0i64; 4];
        e[j] = 1;
        let coeff = HomologyClass(e).pairing(c);
        for (i, row) in out.iter_mut().enumerate() {
            row[j] = row[j]
                .checked_add(coeff.checked_mul(c.0[i]).expect("overflow in transvection"))
                .expect("overflow in transvection");
        }
    }
    SpMatrix(out)
}

/// Homology classes of the standard chain curves c1..c5.
pub fn chain_classes() -> [HomologyClass; 5] {
    [
        HomologyClass([1, 0, 0, 0]), // a1
        HomologyClass([0, 1, 0, 0]), // b1
        HomologyClass([1, 0, 1, 0]), // a1 + a2
        HomologyClass([0, 0, 0, 1]), // b2
        HomologyClass([0, 0, 1, 0]), // a2
    ]
}

fn chain_transvections() -> &'static ([SpMatrix; 5], [SpMatrix; 5]) {
    static CACHE: OnceLock<([SpMatrix; 5], [SpMatrix; 5])> = OnceLock::new();
    CACHE.get_or_init(|| {
        let classes = chain_classes();
        let fwd = classes.map(|c| transvection(&c));
        let inv = fwd.map(|m| m.inverse());
        (fwd, inv)
    })
}

/// Symplectic image of a fully expanded twist word: the product of the
/// per-letter transvection matrices, leftmost letter first.
pub fn sp_of_word(word: &Word) -> SpMatrix {
    assert_eq!(word.alphabet(), Alphabet::Twist, "sp_of_word needs a twist word");
    let (fwd, inv) = chain_transvections();
    let mut acc = SpMatrix::IDENTITY;
    for l in word.letters() {
        let m = if l.inverse {
            &inv[(l.index - 1) as usize]
        } else {
            &fwd[(l.index - 1) as usize]
        };
        acc = acc.mul(m);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tword(signed: &[i8]) -> Word {
        Word::from_signed(Alphabet::Twist, signed).unwrap()
    }

    #[test]
    fn transvection_of_zero_is_identity() {
        assert!(transvection(&HomologyClass::ZERO).is_identity());
    }

    #[test]
    fn transvection_about_a1() {
        // fixes a1, a2, b2; sends b1 -> b1 - a1 with this form orientation
        let t = transvection(&HomologyClass([1, 0, 0, 0]));
        let apply = |v: [i64; 4]| -> [i64; 4] {
            let mut out = [0i64; 4];
            for (i, o) in out.iter_mut().enumerate() {
                *o = (0..4).map(|j| t.0[i][j] * v[j]).sum();
            }
            out
        };
        assert_eq!(apply([1, 0, 0, 0]), [1, 0, 0, 0]);
        assert_eq!(apply([0, 0, 1, 0]), [0, 0, 1, 0]);
        assert_eq!(apply([0, 0, 0, 1]), [0, 0, 0, 1]);
        assert_eq!(apply([0, 1, 0, 0]), [-1, 1, 0, 0]);
    }

    #[test]
    fn transvection_times_inverse_is_identity() {
        let t = transvection(&HomologyClass([1, 2, 0, -1]));
        assert!(t.mul(&t.inverse()).is_identity());
    }

    #[test]
    fn chain_intersection_pattern() {
        let c = chain_classes();
        for i in 0..4 {
            assert_eq!(c[i].pairing(&c[i + 1]).abs(), 1, "adjacent pair {i}");
        }
        for i in 0..5 {
            for j in i + 2..5 {
                assert_eq!(c[i].pairing(&c[j]), 0, "disjoint pair {i},{j}");
            }
        }
    }

    #[test]
    fn chain_transvections_are_symplectic() {
        for c in chain_classes() {
            assert!(transvection(&c).is_symplectic());
        }
    }

    #[test]
    fn braid_relations_in_matrices() {
        let (m, _) = *chain_transvections();
        for i in 0..4 {
            assert_eq!(
                m[i].mul(&m[i + 1]).mul(&m[i]),
                m[i + 1].mul(&m[i]).mul(&m[i + 1])
            );
        }
        for i in 0..5 {
            for j in 0..5 {
                if i + 2 <= j {
                    assert_eq!(m[i].mul(&m[j]), m[j].mul(&m[i]));
                }
            }
        }
    }

    #[test]
    fn sp_of_empty_word_is_identity() {
        assert!(sp_of_word(&Word::identity(Alphabet::Twist)).is_identity());
    }

    #[test]
    fn two_chain_boundary_acts_trivially() {
        assert!(sp_of_word(&tword(&[1, 2]).pow(6)).is_identity());
        assert!(sp_of_word(&tword(&[3, 4]).pow(6)).is_identity());
    }

    #[test]
    fn hyperelliptic_involution_word_is_minus_identity() {
        // basis validation oracle: iota = t1 t2 t3 t4 t5 t5 t4 t3 t2 t1
        let iota = tword(&[1, 2, 3, 4, 5, 5, 4, 3, 2, 1]);
        assert_eq!(sp_of_word(&iota), SpMatrix::MINUS_IDENTITY);
    }

    #[test]
    fn full_chain_sixth_power_is_identity() {
        assert!(sp_of_word(&tword(&[1, 2, 3, 4, 5]).pow(6)).is_identity());
        assert!(!sp_of_word(&tword(&[1, 2, 3, 4, 5]).pow(3)).is_identity());
    }

    #[test]
    fn char_poly_of_identity() {
        // det(xI - I) = (x-1)^4 = x^4 -4x^3 +6x^2 -4x +1
        assert_eq!(SpMatrix::IDENTITY.char_poly(), [1, -4, 6, -4, 1]);
    }
}
