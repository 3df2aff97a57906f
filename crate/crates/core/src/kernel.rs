//! Generating vectors: tuples of group elements assigned to the signature
//! alphabet, evaluation of words through the induced homomorphism, validation
//! of the surface-kernel conditions, and the genus of the kernel surface.

use crate::group::{Elem, FiniteGroup};
use crate::word::{GenSymbol, OrbifoldSignature, Word};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("handle images have mismatched lengths: {a} a-entries vs {b} b-entries")]
    HandleLengthMismatch { a: usize, b: usize },
    #[error("symbol {sym} is outside the signature alphabet (genus {genus}, {r} periods)")]
    SymbolOutOfRange {
        sym: GenSymbol,
        genus: usize,
        r: usize,
    },
    #[error("element index {value} out of range for a group of order {order}")]
    ElementOutOfRange { value: Elem, order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidateError {
    #[error(
        "vector shape ({a} handle pairs, {xi} period images) does not match \
         signature (genus {genus}, {r} periods)"
    )]
    ShapeMismatch {
        a: usize,
        xi: usize,
        genus: usize,
        r: usize,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("kernel Euler characteristic is not an even integer: 2 - 2g = {num}/{den}")]
    NonIntegral { num: i128, den: i128 },
    #[error("computed kernel genus is negative (2 - 2g = {chi}); the data is not hyperbolic")]
    Negative { chi: i128 },
}

/// A candidate surface-kernel assignment: images in `G` for each alphabet
/// symbol, `a[i-1]` for `a_i`, `b[i-1]` for `b_i`, `xi[j-1]` for `x_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratingVector {
    a: Vec<Elem>,
    b: Vec<Elem>,
    xi: Vec<Elem>,
}

impl GeneratingVector {
    /// Build a vector; the two handle-image lists must have equal length.
    pub fn new(a: Vec<Elem>, b: Vec<Elem>, xi: Vec<Elem>) -> Result<Self, EvalError> {
        if a.len() != b.len() {
            return Err(EvalError::HandleLengthMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        Ok(GeneratingVector { a, b, xi })
    }

    pub fn handle_a(&self) -> &[Elem] {
        &self.a
    }

    pub fn handle_b(&self) -> &[Elem] {
        &self.b
    }

    pub fn elliptic(&self) -> &[Elem] {
        &self.xi
    }

    /// Number of handle pairs carried by this vector.
    pub fn genus(&self) -> usize {
        self.a.len()
    }

    /// Number of elliptic images carried by this vector.
    pub fn r(&self) -> usize {
        self.xi.len()
    }

    /// True iff the vector has one image per symbol of `sig`'s alphabet.
    pub fn matches_signature(&self, sig: &OrbifoldSignature) -> bool {
        self.genus() == sig.genus() && self.r() == sig.r()
    }

    /// The image of a single symbol.
    pub fn image_of(&self, sym: GenSymbol) -> Result<Elem, EvalError> {
        let out_of_range = || EvalError::SymbolOutOfRange {
            sym,
            genus: self.genus(),
            r: self.r(),
        };
        match sym {
            GenSymbol::A(i) => self.a.get(i.wrapping_sub(1)).copied().ok_or_else(out_of_range),
            GenSymbol::B(i) => self.b.get(i.wrapping_sub(1)).copied().ok_or_else(out_of_range),
            GenSymbol::X(j) => self.xi.get(j.wrapping_sub(1)).copied().ok_or_else(out_of_range),
        }
    }

    /// All images in alphabet order `a1, b1, ..., x1, ...` (used for orbit
    /// canonicalization).
    pub fn flatten(&self) -> Vec<Elem> {
        let mut out = Vec::with_capacity(2 * self.genus() + self.r());
        for i in 0..self.genus() {
            out.push(self.a[i]);
            out.push(self.b[i]);
        }
        out.extend_from_slice(&self.xi);
        out
    }

    /// Check every image index against the group order.
    pub fn check_elements(&self, group: &FiniteGroup) -> Result<(), EvalError> {
        for &e in self.a.iter().chain(&self.b).chain(&self.xi) {
            if e >= group.order() {
                return Err(EvalError::ElementOutOfRange {
                    value: e,
                    order: group.order(),
                });
            }
        }
        Ok(())
    }
}

/// Evaluate a word through the homomorphism determined by `vec`:
/// letters map to the tabulated images, inverses to group inverses, and the
/// product is taken left-to-right.
pub fn evaluate(group: &FiniteGroup, vec: &GeneratingVector, w: &Word) -> Result<Elem, EvalError> {
    vec.check_elements(group)?;
    let mut acc = group.identity();
    for &(sym, exp) in w.letters() {
        let g = vec.image_of(sym)?;
        let g = if exp < 0 { group.inv(g) } else { g };
        acc = group.mul(acc, g);
    }
    Ok(acc)
}

/// Outcome of the three surface-kernel conditions for a vector against a
/// signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// The long relation evaluates to the identity.
    pub long_relation_ok: bool,
    /// `period_orders_ok[j-1]`: the image of `x_j` has order exactly `m_j`.
    pub period_orders_ok: Vec<bool>,
    /// The images generate the whole group.
    pub surjective: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.long_relation_ok && self.period_orders_ok.iter().all(|&p| p) && self.surjective
    }
}

/// Run all three surface-kernel conditions. Shape mismatches and out-of-range
/// elements are hard errors; condition failures are reported, not raised.
pub fn validate(
    group: &FiniteGroup,
    sig: &OrbifoldSignature,
    vec: &GeneratingVector,
) -> Result<ValidationReport, ValidateError> {
    if !vec.matches_signature(sig) {
        return Err(ValidateError::ShapeMismatch {
            a: vec.genus(),
            xi: vec.r(),
            genus: sig.genus(),
            r: sig.r(),
        });
    }
    vec.check_elements(group)?;

    let long_relation_ok = evaluate(group, vec, &sig.long_relation())? == group.identity();

    let period_orders_ok = sig
        .periods()
        .iter()
        .enumerate()
        .map(|(j, &m)| group.elem_order(vec.xi[j]) == m)
        .collect();

    let surjective = group.closure(&vec.flatten()).len() == group.order();

    Ok(ValidationReport {
        long_relation_ok,
        period_orders_ok,
        surjective,
    })
}

/// Genus of the kernel surface for a surface-kernel map with signature
/// `(g0; m1, ..., mr)` and group order `n`, from the index-`n` cover's Euler
/// characteristic:
///
/// `2 - 2g = n * (2 - 2*g0 - sum_j (1 - 1/m_j))`.
///
/// Exact rational arithmetic; an error means the (signature, order) pair does
/// not arise from a hyperbolic surface-kernel map.
pub fn kernel_genus(sig: &OrbifoldSignature, group_order: usize) -> Result<usize, GenusError> {
    let n = group_order as i128;
    // chi_orb = 2 - 2*g0 - sum (1 - 1/m_j), as a fraction num/den
    let mut num: i128 = 2 - 2 * sig.genus() as i128;
    let mut den: i128 = 1;
    for &m in sig.periods() {
        let m = m as i128;
        // num/den - (m-1)/m = (num*m - den*(m-1)) / (den*m)
        num = num * m - den * (m - 1);
        den *= m;
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
    }
    // 2 - 2g = n * num / den
    let total_num = n * num;
    if total_num % den != 0 {
        return Err(GenusError::NonIntegral {
            num: total_num,
            den,
        });
    }
    let chi = total_num / den;
    // chi = 2 - 2g  =>  g = (2 - chi) / 2
    if chi.rem_euclid(2) != 0 {
        return Err(GenusError::NonIntegral { num: chi, den: 2 });
    }
    let g2 = 2 - chi;
    if g2 < 0 {
        return Err(GenusError::Negative { chi });
    }
    Ok((g2 / 2) as usize)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}
