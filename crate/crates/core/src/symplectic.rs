//! Symplectic similitudes over Q and the integral group Sp_2g(Z).
//!
//! The standard alternating form is fixed as J = [[0, I_g], [-I_g, 0]].
//! A similitude gamma satisfies gamma^T * J * gamma = nu(gamma) * J; only
//! the positive-similitude component (nu > 0) is representable, enforced
//! at construction.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ratmat::{Rat, RatMatrix};

/// The standard symplectic form J = [[0, I_g], [-I_g, 0]] of size 2g.
pub fn standard_form(g: usize) -> RatMatrix {
    let n = 2 * g;
    let mut j = RatMatrix::zero(n, n);
    for i in 0..g {
        j.set(i, g + i, Rat::one());
        j.set(g + i, i, -Rat::one());
    }
    j
}

/// Similitude factor nu with M^T * J * M = nu * J, if M is a positive
/// similitude.
pub fn similitude_character(m: &RatMatrix) -> Result<Rat> {
    if !m.is_square() || m.rows() % 2 != 0 || m.rows() == 0 {
        return Err(Error::NotSimilitude);
    }
    let g = m.rows() / 2;
    let j = standard_form(g);
    let p = m.transpose().mul(&j).mul(m);
    let nu = p.get(0, g).clone();
    let expected = j.scale(&nu);
    if p != expected {
        return Err(Error::NotSimilitude);
    }
    if nu.is_negative() {
        return Err(Error::NegativeSimilitude);
    }
    if nu.is_zero() {
        // degenerate: the form is killed, so M is not a similitude at all
        return Err(Error::NotSimilitude);
    }
    Ok(nu)
}

/// An element of GSp_2g(Q)+ with its similitude factor cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimilitudeElement {
    genus: usize,
    matrix: RatMatrix,
    nu: Rat,
}

impl SimilitudeElement {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        let nu = similitude_character(&matrix)?;
        let genus = matrix.rows() / 2;
        Ok(SimilitudeElement { genus, matrix, nu })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn identity(g: usize) -> Self {
        SimilitudeElement { genus: g, matrix: RatMatrix::identity(2 * g), nu: Rat::one() }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn nu(&self) -> &Rat {
        &self.nu
    }

    /// nu as a positive integer, when the element is integral.
    pub fn nu_integer(&self) -> Option<BigUint> {
        self.nu.to_bigint().map(|b| b.magnitude().clone())
    }

    pub fn is_integral(&self) -> bool {
        self.matrix.is_integral()
    }

    pub fn mul(&self, rhs: &SimilitudeElement) -> SimilitudeElement {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        SimilitudeElement {
            genus: self.genus,
            matrix: self.matrix.mul(&rhs.matrix),
            nu: &self.nu * &rhs.nu,
        }
    }

    pub fn inverse(&self) -> SimilitudeElement {
        let matrix = self.matrix.inverse().expect("similitudes are invertible");
        SimilitudeElement {
            genus: self.genus,
            matrix,
            nu: self.nu.recip().expect("nu is nonzero"),
        }
    }

    /// Membership in Gamma(q): integral, nu = 1 and congruent to the
    /// identity mod q. With q = 1 this tests membership in Sp_2g(Z).
    pub fn in_gamma(&self, q: u64) -> bool {
        if !self.nu.is_one() || !self.is_integral() {
            return false;
        }
        let q = BigInt::from(q);
        let n = 2 * self.genus;
        for i in 0..n {
            for j in 0..n {
                let mut e = self.matrix.get(i, j).numer().clone();
                if i == j {
                    e -= BigInt::one();
                }
                if !(e % &q).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Divide out the gcd of the entries of an integral element. Returns
    /// the primitive part and the content c; nu is divided by c^2.
    pub fn primitive_part(&self) -> Result<(SimilitudeElement, BigUint)> {
        let m = self.matrix.to_int()?;
        let c = m.content();
        if c.is_one() {
            return Ok((self.clone(), c));
        }
        let scale = Rat::new(BigInt::one(), BigInt::from(c.clone()))?;
        let reduced = SimilitudeElement::new(self.matrix.scale(&scale))?;
        Ok((reduced, c))
    }

    /// The smallest positive rational multiple of this element that is
    /// integral with coprime entries.
    pub fn primitive_integral_representative(&self) -> Result<SimilitudeElement> {
        let l = self.matrix.denominator_lcm();
        let scaled = self.matrix.scale(&Rat::from_int(l));
        let el = SimilitudeElement::new(scaled)?;
        Ok(el.primitive_part()?.0)
    }

    pub fn det(&self) -> Rat {
        self.matrix.det()
    }
}

/// A finite symmetric set of integral, determinant-one, nu = 1 elements.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    genus: usize,
    elements: Vec<SimilitudeElement>,
}

impl GeneratorSet {
    /// Build from a list of Gamma elements, closing under inverses.
    pub fn new(genus: usize, elements: Vec<SimilitudeElement>) -> Result<Self> {
        for el in &elements {
            if el.genus() != genus {
                return Err(Error::Precondition("generator has wrong genus".into()));
            }
            if !el.in_gamma(1) {
                return Err(Error::NotInGamma);
            }
        }
        let mut closed = elements;
        let snapshot: Vec<_> = closed.clone();
        for el in snapshot {
            let inv = el.inverse();
            if !closed.iter().any(|e| e.matrix() == inv.matrix()) {
                closed.push(inv);
            }
        }
        Ok(GeneratorSet { genus, elements: closed })
    }

    pub fn empty(genus: usize) -> Self {
        GeneratorSet { genus, elements: Vec::new() }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn elements(&self) -> &[SimilitudeElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The pinned generating set of Sp_2g(Z) for g = 1, 2.
///
/// g = 1: S = [[0,-1],[1,0]], T = [[1,1],[0,1]] and their inverses.
///
/// g = 2: the symplectic involution J, the translations T_B = [[I,B],[0,I]]
/// for B in {E_11, E_22, E_12+E_21}, the GL-block element diag(U, U^-T)
/// for the transvection U = [[1,1],[0,1]], and all inverses. Spectral-gap
/// regression values depend on this exact choice; do not reorder.
pub fn standard_generators(g: usize) -> Result<GeneratorSet> {
    match g {
        1 => {
            let s = SimilitudeElement::parse("0,-1;1,0")?;
            let t = SimilitudeElement::parse("1,1;0,1")?;
            GeneratorSet::new(1, vec![s.clone(), s.inverse(), t.clone(), t.inverse()])
        }
        2 => {
            let j = SimilitudeElement::new(standard_form(2))?;
            let t11 = SimilitudeElement::parse("1,0,1,0;0,1,0,0;0,0,1,0;0,0,0,1")?;
            let t22 = SimilitudeElement::parse("1,0,0,0;0,1,0,1;0,0,1,0;0,0,0,1")?;
            let t12 = SimilitudeElement::parse("1,0,0,1;0,1,1,0;0,0,1,0;0,0,0,1")?;
            // diag(U, U^-T) with U = [[1,1],[0,1]]
            let gl = SimilitudeElement::parse("1,1,0,0;0,1,0,0;0,0,1,0;0,0,-1,1")?;
            let base = vec![j, t11, t22, t12, gl];
            let mut all = Vec::with_capacity(10);
            for el in base {
                all.push(el.clone());
                all.push(el.inverse());
            }
            GeneratorSet::new(2, all)
        }
        _ => Err(Error::UnsupportedGenus(g)),
    }
}
