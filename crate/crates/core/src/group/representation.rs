use crate::field::{RatFunc, Scalar};
use crate::lattice::Matrix;

use super::{GroupError, GroupPresentation, Word};

/// Generator images in `GL_n(K(t))` for a presented group.
#[derive(Clone, Debug)]
pub struct Representation<K: Scalar> {
    presentation: GroupPresentation,
    images: Vec<Matrix<K>>,
    inverses: Vec<Matrix<K>>,
    verified: bool,
}

/// Outcome of checking one relator.
#[derive(Clone, Debug)]
pub struct RelatorCheck<K: Scalar> {
    pub relator: Word,
    pub passed: bool,
    /// The evaluated relator when it is not the identity.
    pub value: Option<Matrix<K>>,
}

/// Determinant of one generator image.
#[derive(Clone, Debug)]
pub struct DeterminantCheck<K: Scalar> {
    pub generator: usize,
    pub det: RatFunc<K>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct VerificationReport<K: Scalar> {
    pub determinants: Vec<DeterminantCheck<K>>,
    pub relators: Vec<RelatorCheck<K>>,
}

impl<K: Scalar> VerificationReport<K> {
    pub fn all_passed(&self) -> bool {
        self.determinants.iter().all(|d| d.passed) && self.relators.iter().all(|r| r.passed)
    }

    pub fn first_failed_relator(&self) -> Option<&RelatorCheck<K>> {
        self.relators.iter().find(|r| !r.passed)
    }
}

impl<K: Scalar> Representation<K> {
    /// Unverified representation; images must be square, of one size, and
    /// invertible.
    pub fn new(presentation: GroupPresentation, images: Vec<Matrix<K>>) -> Result<Self, GroupError> {
        let m = presentation.generator_count();
        if images.len() != m {
            return Err(GroupError::WrongImageCount { expected: m, got: images.len() });
        }
        let n = images.first().map_or(0, |g| g.rows());
        let mut inverses = Vec::with_capacity(m);
        for (i, g) in images.iter().enumerate() {
            if !g.is_square() || g.rows() != n {
                return Err(GroupError::DimensionMismatch { generator: presentation.names()[i].clone() });
            }
            let inv = g.inverse().ok_or_else(|| GroupError::NotInvertible(presentation.names()[i].clone()))?;
            inverses.push(inv);
        }
        Ok(Representation { presentation, images, inverses, verified: false })
    }

    /// Constructs and verifies in one step.
    pub fn verified(presentation: GroupPresentation, images: Vec<Matrix<K>>) -> Result<Self, GroupError> {
        let mut rep = Self::new(presentation, images)?;
        let report = rep.verify();
        if let Some(bad) = report.first_failed_relator() {
            return Err(GroupError::RelatorFailure { relator: rep.presentation.word_to_string(&bad.relator) });
        }
        if let Some(d) = report.determinants.iter().find(|d| !d.passed) {
            return Err(GroupError::NotUnimodular(rep.presentation.names()[d.generator].clone()));
        }
        Ok(rep)
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn images(&self) -> &[Matrix<K>] {
        &self.images
    }

    pub fn dim(&self) -> usize {
        self.images.first().map_or(0, |g| g.rows())
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn ctx(&self) -> Option<&K::Ctx> {
        self.images.first().map(|g| g.ctx())
    }

    /// Image of a single letter.
    pub fn letter_image(&self, gen: usize, inverse: bool) -> &Matrix<K> {
        if inverse {
            &self.inverses[gen]
        } else {
            &self.images[gen]
        }
    }

    pub fn evaluate(&self, w: &Word) -> Result<Matrix<K>, GroupError> {
        self.presentation.check_word(w)?;
        let ctx = self.ctx().ok_or(GroupError::EmptyPresentation)?;
        let mut acc = Matrix::identity(self.dim(), ctx);
        for l in w.letters() {
            acc = &acc * self.letter_image(l.gen, l.inverse);
        }
        Ok(acc)
    }

    /// Checks `det = 1` for every image and evaluates every relator; marks
    /// the representation verified when everything passes.
    pub fn verify(&mut self) -> VerificationReport<K> {
        let determinants = self
            .images
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let det = g.det();
                DeterminantCheck { generator: i, passed: det.is_one(), det }
            })
            .collect();
        let relators = self
            .presentation
            .relators()
            .iter()
            .map(|r| {
                let v = self.evaluate(r).expect("relators are checked against the presentation");
                let passed = v.is_identity();
                RelatorCheck { relator: r.clone(), passed, value: (!passed).then_some(v) }
            })
            .collect();
        let report = VerificationReport { determinants, relators };
        self.verified = report.all_passed();
        report
    }

    /// `g ρ g⁻¹`.
    pub fn conjugate(&self, g: &Matrix<K>) -> Result<Self, GroupError> {
        let ginv = g.inverse().ok_or_else(|| GroupError::NotInvertible("conjugator".into()))?;
        let images = self.images.iter().map(|x| &(g * x) * &ginv).collect();
        let mut rep = Representation::new(self.presentation.clone(), images)?;
        rep.verified = self.verified;
        Ok(rep)
    }
}

/// A homomorphism of presented groups given by the image word of each source
/// generator.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: GroupPresentation,
    pub target: GroupPresentation,
    pub images: Vec<Word>,
}

impl GroupHom {
    pub fn new(source: GroupPresentation, target: GroupPresentation, images: Vec<Word>) -> Result<Self, GroupError> {
        if images.len() != source.generator_count() {
            return Err(GroupError::WrongImageCount { expected: source.generator_count(), got: images.len() });
        }
        for w in &images {
            target.check_word(w)?;
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn identity(p: &GroupPresentation) -> Self {
        let images = (0..p.generator_count()).map(Word::gen).collect();
        GroupHom { source: p.clone(), target: p.clone(), images }
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }
}

/// `ρ ∘ h` as a representation of the source group, with the source
/// relators re-verified.
pub fn pullback<K: Scalar>(rep: &Representation<K>, h: &GroupHom) -> Result<Representation<K>, GroupError> {
    if rep.presentation() != &h.target {
        return Err(GroupError::PresentationMismatch);
    }
    let images = h.images.iter().map(|w| rep.evaluate(w)).collect::<Result<Vec<_>, _>>()?;
    Representation::verified(h.source.clone(), images)
}
