//! Equivalence moves on generating vectors: word-level substitutions of the
//! orbifold group that fix the long relation up to conjugacy and permute the
//! elliptic generators up to conjugacy, together with their induced action on
//! group-element tuples, and orbit enumeration under a chosen set of moves.

use crate::group::{Elem, FiniteGroup};
use crate::kernel::{evaluate, EvalError, GeneratingVector};
use crate::word::{GenSymbol, OrbifoldSignature, Substitution, Word, WordError};
use std::collections::BTreeSet;
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

/// One of the standard moves. `Bhat(j)` swaps the handle pairs `j` and `j+1`
/// (up to an inner correction); the others act on the first one or two handle
/// pairs and, for `V3`/`V4`, on elliptic generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HarveyOp {
    /// `a1 -> a1 b1`.
    V1,
    /// `a1 -> a1 b1`, `b1 -> a1^-1`.
    V2,
    /// Mix the first two handle pairs: `a1 -> a2 a1`, `a2 -> b1 a2 b1^-1`,
    /// `b2 -> a2 b2 a2^-1 b1^-1`, and conjugate every elliptic generator by
    /// `a2`.
    V3,
    /// Twist the first handle pair along the last elliptic generator:
    /// `a1 -> [a1^-1, xr^-1] a1`, `b1 -> b1 a1^-1 xr a1`, `xr -> a1^-1 xr a1`.
    V4,
    /// Swap handle pairs `j` and `j+1`, conjugating the incoming pair by
    /// `[a_{j+1}, b_{j+1}]`.
    Bhat(usize),
}

impl fmt::Display for HarveyOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HarveyOp::V1 => write!(f, "V1"),
            HarveyOp::V2 => write!(f, "V2"),
            HarveyOp::V3 => write!(f, "V3"),
            HarveyOp::V4 => write!(f, "V4"),
            HarveyOp::Bhat(j) => write!(f, "Bhat:{j}"),
        }
    }
}

impl HarveyOp {
    /// Parse `"V1"`..`"V4"` or `"Bhat:<j>"` with `j >= 1`.
    pub fn parse(text: &str) -> Result<HarveyOp, MoveError> {
        let bad = || MoveError::BadOpName {
            text: text.to_string(),
        };
        match text {
            "V1" => Ok(HarveyOp::V1),
            "V2" => Ok(HarveyOp::V2),
            "V3" => Ok(HarveyOp::V3),
            "V4" => Ok(HarveyOp::V4),
            _ => {
                let j = text.strip_prefix("Bhat:").ok_or_else(bad)?;
                if j.is_empty() || !j.chars().all(|c| c.is_ascii_digit()) || j.starts_with('0') {
                    return Err(bad());
                }
                Ok(HarveyOp::Bhat(j.parse().map_err(|_| bad())?))
            }
        }
    }

    /// True iff a signature with quotient genus `g0` and `r` periods has the
    /// handle pairs / elliptic generators this move touches.
    pub fn applicable(&self, g0: usize, r: usize) -> bool {
        match *self {
            HarveyOp::V1 | HarveyOp::V2 => g0 >= 1,
            HarveyOp::V3 => g0 >= 2,
            HarveyOp::V4 => g0 >= 1 && r >= 1,
            HarveyOp::Bhat(j) => j >= 1 && g0 > j,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("cannot parse {text:?} as a move name (expected V1..V4 or Bhat:<j>)")]
    BadOpName { text: String },
    #[error("move {op} does not apply to a signature with genus {genus} and {r} periods")]
    InapplicableSignature {
        op: HarveyOp,
        genus: usize,
        r: usize,
    },
    #[error("move {op} was not applied: {reason}")]
    PreconditionFailed { op: HarveyOp, reason: String },
    #[error(
        "vector shape ({a} handle pairs, {xi} period images) does not match \
         signature (genus {genus}, {r} periods)"
    )]
    VectorShape {
        a: usize,
        xi: usize,
        genus: usize,
        r: usize,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Outcome of applying a move to a vector. `applied == false` means the
/// move's image formula needs a precondition the vector does not satisfy; the
/// vector is returned unchanged and `reason` explains why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpResult {
    pub applied: bool,
    pub vector: GeneratingVector,
    pub reason: Option<String>,
}

impl OpResult {
    fn applied(vector: GeneratingVector) -> Self {
        OpResult {
            applied: true,
            vector,
            reason: None,
        }
    }

    fn skipped(vector: GeneratingVector, reason: String) -> Self {
        OpResult {
            applied: false,
            vector,
            reason: Some(reason),
        }
    }
}

/// The word-level substitution realizing `op` on `sig`'s alphabet.
pub fn substitution_of(op: HarveyOp, sig: &OrbifoldSignature) -> Result<Substitution, MoveError> {
    let (g0, r) = (sig.genus(), sig.r());
    if !op.applicable(g0, r) {
        return Err(MoveError::InapplicableSignature { op, genus: g0, r });
    }
    let a = |i| Word::letter(GenSymbol::A(i), 1);
    let b = |i| Word::letter(GenSymbol::B(i), 1);
    let x = |j| Word::letter(GenSymbol::X(j), 1);
    let mut sub = Substitution::identity(sig);
    match op {
        HarveyOp::V1 => {
            sub.set(GenSymbol::A(1), a(1).concat(&b(1)))?;
        }
        HarveyOp::V2 => {
            sub.set(GenSymbol::A(1), a(1).concat(&b(1)))?;
            sub.set(GenSymbol::B(1), a(1).inverse())?;
        }
        HarveyOp::V3 => {
            sub.set(GenSymbol::A(1), a(2).concat(&a(1)))?;
            sub.set(
                GenSymbol::A(2),
                b(1).concat(&a(2)).concat(&b(1).inverse()),
            )?;
            sub.set(
                GenSymbol::B(2),
                a(2).concat(&b(2))
                    .concat(&a(2).inverse())
                    .concat(&b(1).inverse()),
            )?;
            // everything to the right of the second handle is conjugated by
            // a2, so the long relation maps to a2 R a2^-1
            let conj = |w: Word| a(2).concat(&w).concat(&a(2).inverse());
            for i in 3..=g0 {
                sub.set(GenSymbol::A(i), conj(a(i)))?;
                sub.set(GenSymbol::B(i), conj(b(i)))?;
            }
            for j in 1..=r {
                sub.set(GenSymbol::X(j), conj(x(j)))?;
            }
        }
        HarveyOp::V4 => {
            // u = [a1^-1, xr^-1]
            let u = Word::commutator(&a(1).inverse(), &x(r).inverse());
            sub.set(GenSymbol::A(1), u.concat(&a(1)))?;
            sub.set(
                GenSymbol::B(1),
                b(1).concat(&a(1).inverse()).concat(&x(r)).concat(&a(1)),
            )?;
            sub.set(
                GenSymbol::X(r),
                a(1).inverse().concat(&x(r)).concat(&a(1)),
            )?;
        }
        HarveyOp::Bhat(j) => {
            let c = Word::commutator(&a(j + 1), &b(j + 1));
            sub.set(GenSymbol::A(j), a(j + 1))?;
            sub.set(GenSymbol::B(j), b(j + 1))?;
            sub.set(
                GenSymbol::A(j + 1),
                c.inverse().concat(&a(j)).concat(&c),
            )?;
            sub.set(
                GenSymbol::B(j + 1),
                c.inverse().concat(&b(j)).concat(&c),
            )?;
        }
    }
    Ok(sub)
}

/// Apply `op`'s tabulated image formula to a vector of group elements. The
/// shape requirements are hard errors; `V4`'s commutation precondition (the
/// image of `a1` lies in the cyclic span of the last elliptic image, or the
/// group is abelian) is reported through `OpResult::applied`.
pub fn apply_op(
    op: HarveyOp,
    vec: &GeneratingVector,
    group: &FiniteGroup,
) -> Result<OpResult, MoveError> {
    vec.check_elements(group)?;
    let (g0, r) = (vec.genus(), vec.r());
    if !op.applicable(g0, r) {
        return Err(MoveError::InapplicableSignature { op, genus: g0, r });
    }
    let mut a = vec.handle_a().to_vec();
    let mut b = vec.handle_b().to_vec();
    let mut xi = vec.elliptic().to_vec();
    match op {
        HarveyOp::V1 => {
            a[0] = group.mul(a[0], b[0]);
        }
        HarveyOp::V2 => {
            let (a1, b1) = (a[0], b[0]);
            a[0] = group.mul(a1, b1);
            b[0] = group.inv(a1);
        }
        HarveyOp::V3 => {
            let (a1, b1, a2, b2) = (a[0], b[0], a[1], b[1]);
            a[0] = group.mul(a2, a1);
            a[1] = group.mul(group.mul(b1, a2), group.inv(b1));
            b[1] = group.mul(
                group.mul(group.mul(a2, b2), group.inv(a2)),
                group.inv(b1),
            );
            let conj = |v: Elem| group.mul(group.mul(a2, v), group.inv(a2));
            for v in a.iter_mut().skip(2) {
                *v = conj(*v);
            }
            for v in b.iter_mut().skip(2) {
                *v = conj(*v);
            }
            for v in xi.iter_mut() {
                *v = conj(*v);
            }
        }
        HarveyOp::V4 => {
            let (a1, xr) = (a[0], xi[r - 1]);
            if !group.is_abelian() && !group.in_cyclic_span(a1, xr) {
                let reason = format!(
                    "the image {} of a1 is not a power of the image {} of x{r}, \
                     and the group is not abelian",
                    group.name(a1),
                    group.name(xr)
                );
                return Ok(OpResult::skipped(vec.clone(), reason));
            }
            b[0] = group.mul(b[0], xr);
        }
        HarveyOp::Bhat(j) => {
            let (aj, bj, ak, bk) = (a[j - 1], b[j - 1], a[j], b[j]);
            // c = [a_{j+1}, b_{j+1}] evaluated in the group
            let c = group.mul(
                group.mul(group.mul(ak, bk), group.inv(ak)),
                group.inv(bk),
            );
            let ci = group.inv(c);
            a[j - 1] = ak;
            b[j - 1] = bk;
            a[j] = group.mul(group.mul(ci, aj), c);
            b[j] = group.mul(group.mul(ci, bj), c);
        }
    }
    Ok(OpResult::applied(GeneratingVector::new(a, b, xi)?))
}

/// Check that `op`'s word-level substitution is a signature-preserving
/// automorphism shape: the long relation maps to a conjugate of itself, and
/// each elliptic generator's image is (up to cyclic reduction) a single
/// positive elliptic letter of the same period.
pub fn verify_automorphism(op: HarveyOp, sig: &OrbifoldSignature) -> Result<bool, MoveError> {
    let sub = substitution_of(op, sig)?;
    let long = sig.long_relation();
    if !sub.apply(&long)?.is_conjugate_to(&long) {
        return Ok(false);
    }
    for j in 1..=sig.r() {
        let img = sub.apply(&Word::letter(GenSymbol::X(j), 1))?;
        let core = img.cyclically_reduce();
        let ok = match core.letters() {
            [(GenSymbol::X(k), 1)] => sig.periods()[k - 1] == sig.periods()[j - 1],
            _ => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check that the tabulated image formula agrees with evaluating the
/// word-level substitution through the vector, symbol by symbol. A move whose
/// precondition fails is an error, not a `false`.
pub fn consistency_check(
    group: &FiniteGroup,
    sig: &OrbifoldSignature,
    vec: &GeneratingVector,
    op: HarveyOp,
) -> Result<bool, MoveError> {
    if !vec.matches_signature(sig) {
        return Err(MoveError::VectorShape {
            a: vec.genus(),
            xi: vec.r(),
            genus: sig.genus(),
            r: sig.r(),
        });
    }
    let sub = substitution_of(op, sig)?;
    let res = apply_op(op, vec, group)?;
    if !res.applied {
        return Err(MoveError::PreconditionFailed {
            op,
            reason: res.reason.unwrap_or_default(),
        });
    }
    for sym in sig.alphabet() {
        let via_words = evaluate(group, vec, &sub.image_of(sym)?)?;
        let via_table = res.vector.image_of(sym)?;
        if via_words != via_table {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The orbit of `start` under a set of moves, breadth-first, canonicalized by
/// the flattened image tuple. Moves that do not fit the vector's shape are
/// skipped; moves whose precondition fails contribute no edge. Enumeration
/// stops once `cap` distinct vectors have been collected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitResult {
    /// Distinct vectors reached, sorted by flattened image tuple.
    pub vectors: Vec<GeneratingVector>,
    /// True iff enumeration stopped at `cap` with edges still unexplored.
    pub truncated: bool,
}

pub fn enumerate_orbit(
    group: &FiniteGroup,
    start: &GeneratingVector,
    ops: &[HarveyOp],
    cap: usize,
) -> Result<OrbitResult, MoveError> {
    start.check_elements(group)?;
    let mut ops = ops.to_vec();
    ops.sort();
    ops.dedup();
    let (g0, r) = (start.genus(), start.r());

    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut queue: VecDeque<GeneratingVector> = VecDeque::new();
    let mut truncated = false;
    if cap == 0 {
        return Ok(OrbitResult {
            vectors: Vec::new(),
            truncated: true,
        });
    }
    seen.insert(start.flatten());
    queue.push_back(start.clone());
    'bfs: while let Some(current) = queue.pop_front() {
        for &op in &ops {
            if !op.applicable(g0, r) {
                continue;
            }
            let res = apply_op(op, &current, group)?;
            if !res.applied {
                continue;
            }
            let key = res.vector.flatten();
            if seen.contains(&key) {
                continue;
            }
            if seen.len() == cap {
                truncated = true;
                break 'bfs;
            }
            seen.insert(key);
            queue.push_back(res.vector);
        }
    }

    let mut vectors: Vec<GeneratingVector> = Vec::with_capacity(seen.len());
    for flat in &seen {
        let a: Vec<Elem> = (0..g0).map(|i| flat[2 * i]).collect();
        let b: Vec<Elem> = (0..g0).map(|i| flat[2 * i + 1]).collect();
        let xi = flat[2 * g0..].to_vec();
        vectors.push(GeneratingVector::new(a, b, xi)?);
    }
    Ok(OrbitResult { vectors, truncated })
}
