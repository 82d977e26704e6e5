//! The named vanishing cycles of the three (4,3) factorizations, as
//! machine-readable definitions over the standard chain.
//!
//! A curve is a chain curve, a chain-relation boundary (its twist is the
//! chain word, e.g. sigma -> (t1 t2)^6), or the image of a library curve
//! under a twist word. Twists about image curves expand by naturality:
//! the twist about u(c) is u . t_c . u^-1.
//!
//! The bk curves are defined through the global conjugation phi = t1^-2 t5
//! that carries them onto the hamada curves, which pins them down without a
//! combinatorial encoding of the original pictures; the compensating check
//! is that their factorization independently evaluates to the identity
//! with type (4,3).

use crate::homology::sp_of_word;
use crate::word::{Alphabet, Word};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("unknown curve name: {0}")]
    UnknownCurve(String),
    #[error("curve {0} already defined")]
    DuplicateCurve(String),
    #[error("curve {name}: declared {declared:?} but homology screen says {screened:?}")]
    ClassificationMismatch {
        name: String,
        declared: CurveClass,
        screened: CurveClass,
    },
    #[error("curve definition must use the twist alphabet")]
    WrongAlphabet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveClass {
    Separating,
    Nonseparating,
}

impl std::fmt::Display for CurveClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurveClass::Separating => write!(f, "separating"),
            CurveClass::Nonseparating => write!(f, "nonseparating"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveDef {
    /// One of the standard chain curves c1..c5.
    Chain(u8),
    /// Boundary of a chain relation; the field is the chain word whose
    /// evaluation equals the twist about the curve.
    ChainBoundary(Word),
    /// Image of an already-defined curve under a twist word.
    Image { conjugator: Word, base: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCurve {
    pub name: String,
    pub def: CurveDef,
    pub class: CurveClass,
    /// Fully expanded twist word for the twist about this curve.
    twist: Word,
}

impl NamedCurve {
    pub fn twist_word(&self) -> &Word {
        &self.twist
    }
}

/// Immutable after construction; names resolve in insertion order, so image
/// definitions are acyclic by construction.
#[derive(Debug, Clone, Default)]
pub struct CurveLibrary {
    curves: Vec<NamedCurve>,
    index: HashMap<String, usize>,
}

impl CurveLibrary {
    pub fn empty() -> CurveLibrary {
        CurveLibrary::default()
    }

    pub fn lookup(&self, name: &str) -> Option<&NamedCurve> {
        self.index.get(name).map(|&i| &self.curves[i])
    }

    pub fn twist_word(&self, name: &str) -> Result<&Word, CurveError> {
        self.lookup(name)
            .map(NamedCurve::twist_word)
            .ok_or_else(|| CurveError::UnknownCurve(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &NamedCurve> {
        self.curves.iter()
    }

    pub fn add(&mut self, name: &str, def: CurveDef, class: CurveClass) -> Result<(), CurveError> {
        if self.index.contains_key(name) {
            return Err(CurveError::DuplicateCurve(name.to_string()));
        }
        let twist = self.expand(&def)?;
        if twist.alphabet() != Alphabet::Twist {
            return Err(CurveError::WrongAlphabet);
        }
        // the separating/nonseparating declaration must agree with the
        // homology screen: separating <=> trivial symplectic action
        let screened = if sp_of_word(&twist).is_identity() {
            CurveClass::Separating
        } else {
            CurveClass::Nonseparating
        };
        if screened != class {
            return Err(CurveError::ClassificationMismatch {
                name: name.to_string(),
                declared: class,
                screened,
            });
        }
        self.index.insert(name.to_string(), self.curves.len());
        self.curves.push(NamedCurve {
            name: name.to_string(),
            def,
            class,
            twist,
        });
        Ok(())
    }

    fn expand(&self, def: &CurveDef) -> Result<Word, CurveError> {
        match def {
            CurveDef::Chain(i) => {
                Word::from_signed(Alphabet::Twist, &[*i as i8]).map_err(|_| CurveError::WrongAlphabet)
            }
            CurveDef::ChainBoundary(w) => Ok(w.clone()),
            CurveDef::Image { conjugator, base } => {
                let base_word = self.twist_word(base)?;
                base_word
                    .conjugated_by(conjugator)
                    .map_err(|_| CurveError::WrongAlphabet)
            }
        }
    }

    /// The built-in catalog: chain curves, Hamada's curves, Xiao's curves,
    /// and the Baykur-Korkmaz curves via the global conjugation
    /// phi = t1^-2 t5.
    pub fn builtin() -> CurveLibrary {
        let tw = |s: &[i8]| Word::from_signed(Alphabet::Twist, s).expect("static word");
        let mut lib = CurveLibrary::empty();
        let add = |lib: &mut CurveLibrary, name: &str, def: CurveDef, class: CurveClass| {
            lib.add(name, def, class).expect("builtin library is consistent");
        };

        use CurveClass::{Nonseparating as N, Separating as S};
        for i in 1..=5u8 {
            add(&mut lib, &format!("c{i}"), CurveDef::Chain(i), N);
        }
        add(&mut lib, "sigma", CurveDef::ChainBoundary(tw(&[1, 2]).pow(6)), S);
        add(&mut lib, "gamma", CurveDef::ChainBoundary(tw(&[3, 4]).pow(6)), S);
        // Hamada's curves
        let image = |conj: Word, base: &str| CurveDef::Image {
            conjugator: conj,
            base: base.to_string(),
        };
        add(&mut lib, "alpha", image(tw(&[-4, -3]), "sigma"), S);
        add(&mut lib, "D", image(tw(&[2, 1, 1, 2]), "c3"), N);
        add(&mut lib, "E", image(tw(&[4, 4, -1, -1, -2]), "c3"), N);
        add(&mut lib, "F", image(tw(&[3, 4]).pow(-3), "c2"), N);
        add(&mut lib, "G", image(tw(&[-4, -4, 1, 1, 2]), "c3"), N);
        // Xiao's curves: R3 = D, Q3 = sigma, R2 = F, R1 = G, Q1 = alpha,
        // P = tD tsigma (E), Q2 = tF^-1 (gamma)
        add(&mut lib, "R3", image(Word::identity(Alphabet::Twist), "D"), N);
        add(&mut lib, "Q3", image(Word::identity(Alphabet::Twist), "sigma"), S);
        add(&mut lib, "R2", image(Word::identity(Alphabet::Twist), "F"), N);
        add(&mut lib, "R1", image(Word::identity(Alphabet::Twist), "G"), N);
        add(&mut lib, "Q1", image(Word::identity(Alphabet::Twist), "alpha"), S);
        let t_d = lib.twist_word("D").unwrap().clone();
        let t_sigma = lib.twist_word("sigma").unwrap().clone();
        let t_alpha = lib.twist_word("alpha").unwrap().clone();
        let t_f = lib.twist_word("F").unwrap().clone();
        add(&mut lib, "P", image(t_d.concat(&t_sigma).unwrap(), "E"), N);
        add(&mut lib, "Q2", image(t_f.invert(), "gamma"), S);
        // Baykur-Korkmaz curves via phi^-1 = t5^-1 t1^2
        let phi_inv = tw(&[-5, 1, 1]);
        add(&mut lib, "e", image(phi_inv.clone(), "gamma"), S);
        add(&mut lib, "x1", image(phi_inv.clone(), "F"), N);
        add(&mut lib, "x2", image(phi_inv.clone(), "G"), N);
        add(&mut lib, "d", image(phi_inv.clone(), "alpha"), S);
        add(&mut lib, "B2", image(phi_inv.clone(), "D"), N);
        add(&mut lib, "C", image(phi_inv.clone(), "sigma"), S);
        let x3_conj = phi_inv
            .concat(&t_alpha)
            .unwrap()
            .concat(&t_d)
            .unwrap()
            .concat(&t_sigma)
            .unwrap();
        add(&mut lib, "x3", image(x3_conj, "E"), N);
        lib
    }
}

/// The global conjugation relating the Baykur-Korkmaz and Hamada
/// factorizations: phi = t1^-2 t5.
pub fn phi_word() -> Word {
    Word::from_signed(Alphabet::Twist, &[-1, -1, 5]).expect("static word")
}
