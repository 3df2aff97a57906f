//! Free-group words over the canonical orbifold generator alphabet
//! `a_1, b_1, ..., a_g0, b_g0, x_1, ..., x_r`, the orbifold signature, the
//! long relation, and substitution endomorphisms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// A generator symbol of the orbifold fundamental group: `a_i`/`b_i` are the
/// two handle generators of handle `i`, `x_j` is the elliptic generator of
/// period `m_j`. Indices are 1-based.
///
/// The derived `Ord` is only used for map keys; positional comparisons in the
/// rewriting pipeline always go through [`GenSymbol::rank`], which interleaves
/// the handle generators (`a1, b1, a2, b2, ..., x1, ..., xr`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenSymbol {
    /// `a_i`, first generator of handle `i` (1-based).
    A(usize),
    /// `b_i`, second generator of handle `i` (1-based).
    B(usize),
    /// `x_j`, elliptic generator `j` (1-based).
    X(usize),
}

impl GenSymbol {
    /// Position of this symbol in the canonical alphabet order
    /// `a1, b1, a2, b2, ..., a_g0, b_g0, x1, ..., xr` for quotient genus `g0`.
    pub fn rank(&self, g0: usize) -> usize {
        match *self {
            GenSymbol::A(i) => 2 * (i - 1),
            GenSymbol::B(i) => 2 * i - 1,
            GenSymbol::X(j) => 2 * g0 + j - 1,
        }
    }

    /// True iff the symbol's index is within range for `sig`.
    pub fn in_signature(&self, sig: &OrbifoldSignature) -> bool {
        match *self {
            GenSymbol::A(i) | GenSymbol::B(i) => 1 <= i && i <= sig.genus(),
            GenSymbol::X(j) => 1 <= j && j <= sig.r(),
        }
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GenSymbol::A(i) => write!(f, "a{i}"),
            GenSymbol::B(i) => write!(f, "b{i}"),
            GenSymbol::X(j) => write!(f, "x{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("cannot parse token {token:?} as a signed generator symbol")]
    BadToken { token: String },
    #[error("symbol {sym} is outside the substitution's alphabet")]
    OutsideDomain { sym: GenSymbol },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("period {index} is {value}; every period must be at least 2")]
    PeriodTooSmall { index: usize, value: usize },
}

/// Push one signed letter onto a freely reduced letter sequence, cancelling
/// against the current last letter when possible.
pub(crate) fn push_reduced<T: Copy + Eq>(letters: &mut Vec<(T, i8)>, letter: (T, i8)) {
    match letters.last() {
        Some(&(s, e)) if s == letter.0 && e == -letter.1 => {
            letters.pop();
        }
        _ => letters.push(letter),
    }
}

/// Freely reduce a full letter sequence.
pub(crate) fn reduce_all<T: Copy + Eq>(letters: impl IntoIterator<Item = (T, i8)>) -> Vec<(T, i8)> {
    let mut out = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    out
}

/// A freely reduced word in the free group on [`GenSymbol`]s. The empty word
/// is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(GenSymbol, i8)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// The single-letter word `sym^exp` (`exp` is `+1` or `-1`).
    pub fn letter(sym: GenSymbol, exp: i8) -> Self {
        assert!(exp == 1 || exp == -1, "exponent must be +-1");
        Word {
            letters: vec![(sym, exp)],
        }
    }

    /// Build a word from signed letters, freely reducing.
    pub fn from_letters(letters: impl IntoIterator<Item = (GenSymbol, i8)>) -> Self {
        Word {
            letters: reduce_all(letters),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[(GenSymbol, i8)] {
        &self.letters
    }

    /// Concatenate and freely reduce.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word { letters }
    }

    /// The inverse word.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(s, e)| (s, -e)).collect(),
        }
    }

    /// Append one signed letter, freely reducing.
    pub fn push(&mut self, sym: GenSymbol, exp: i8) {
        assert!(exp == 1 || exp == -1, "exponent must be +-1");
        push_reduced(&mut self.letters, (sym, exp));
    }

    /// The commutator `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Remove cancelling prefix/suffix pairs: the cyclic core of the word.
    /// Two words are conjugate in the free group iff their cyclic cores are
    /// cyclic rotations of one another.
    pub fn cyclically_reduce(&self) -> Word {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 {
            let first = letters[0];
            let last = *letters.last().unwrap();
            if first.0 == last.0 && first.1 == -last.1 {
                letters.pop();
                letters.remove(0);
            } else {
                break;
            }
        }
        Word { letters }
    }

    /// True iff `self` and `other` are conjugate in the free group.
    pub fn is_conjugate_to(&self, other: &Word) -> bool {
        let a = self.cyclically_reduce();
        let b = other.cyclically_reduce();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let n = a.len();
        (0..n).any(|shift| (0..n).all(|i| a.letters[(i + shift) % n] == b.letters[i]))
    }

    /// Parse the whitespace-separated token syntax: `a1 b2^-1 x3`. The token
    /// `1` denotes the empty word and may appear anywhere.
    pub fn parse(text: &str) -> Result<Word, WordError> {
        let mut word = Word::empty();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (base, exp) = match token.strip_suffix("^-1") {
                Some(b) => (b, -1),
                None => (token, 1),
            };
            let sym = parse_symbol(base).ok_or_else(|| WordError::BadToken {
                token: token.to_string(),
            })?;
            word.push(sym, exp);
        }
        Ok(word)
    }
}

/// Parse a bare symbol token: `a<i>`, `b<i>`, or `x<j>` with a positive index.
pub fn parse_symbol(token: &str) -> Option<GenSymbol> {
    let mut chars = token.chars();
    let kind = chars.next()?;
    let rest = chars.as_str();
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) || rest.starts_with('0') {
        return None;
    }
    let idx: usize = rest.parse().ok()?;
    match kind {
        'a' => Some(GenSymbol::A(idx)),
        'b' => Some(GenSymbol::B(idx)),
        'x' => Some(GenSymbol::X(idx)),
        _ => None,
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
            if *e < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// An orbifold signature `(g0; m1, ..., mr)`: quotient genus plus branch
/// periods, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbifoldSignature {
    genus: usize,
    periods: Vec<usize>,
}

impl OrbifoldSignature {
    pub fn new(genus: usize, periods: Vec<usize>) -> Result<Self, SignatureError> {
        for (i, &m) in periods.iter().enumerate() {
            if m < 2 {
                return Err(SignatureError::PeriodTooSmall {
                    index: i + 1,
                    value: m,
                });
            }
        }
        Ok(OrbifoldSignature { genus, periods })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn periods(&self) -> &[usize] {
        &self.periods
    }

    /// Number of elliptic generators.
    pub fn r(&self) -> usize {
        self.periods.len()
    }

    /// Total number of generator symbols: `2*g0 + r`.
    pub fn num_symbols(&self) -> usize {
        2 * self.genus + self.r()
    }

    /// The alphabet in canonical order `a1, b1, ..., a_g0, b_g0, x1, ..., xr`.
    pub fn alphabet(&self) -> Vec<GenSymbol> {
        let mut syms = Vec::with_capacity(self.num_symbols());
        for i in 1..=self.genus {
            syms.push(GenSymbol::A(i));
            syms.push(GenSymbol::B(i));
        }
        for j in 1..=self.r() {
            syms.push(GenSymbol::X(j));
        }
        syms
    }

    /// The long relation `[a1,b1] ... [a_g0,b_g0] x1 ... xr`.
    pub fn long_relation(&self) -> Word {
        let mut w = Word::empty();
        for i in 1..=self.genus {
            let a = Word::letter(GenSymbol::A(i), 1);
            let b = Word::letter(GenSymbol::B(i), 1);
            w = w.concat(&Word::commutator(&a, &b));
        }
        for j in 1..=self.r() {
            w.push(GenSymbol::X(j), 1);
        }
        w
    }
}

/// An endomorphism of the free group on a signature's alphabet, given by
/// generator images. Symbols without an explicit image map to themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: BTreeSet<GenSymbol>,
    images: BTreeMap<GenSymbol, Word>,
}

impl Substitution {
    /// The identity substitution on `sig`'s alphabet.
    pub fn identity(sig: &OrbifoldSignature) -> Self {
        Substitution {
            alphabet: sig.alphabet().into_iter().collect(),
            images: BTreeMap::new(),
        }
    }

    /// Set the image of `sym`. Both `sym` and every symbol of `image` must lie
    /// in the alphabet.
    pub fn set(&mut self, sym: GenSymbol, image: Word) -> Result<(), WordError> {
        if !self.alphabet.contains(&sym) {
            return Err(WordError::OutsideDomain { sym });
        }
        for &(s, _) in image.letters() {
            if !self.alphabet.contains(&s) {
                return Err(WordError::OutsideDomain { sym: s });
            }
        }
        self.images.insert(sym, image);
        Ok(())
    }

    /// The image of a single generator.
    pub fn image_of(&self, sym: GenSymbol) -> Result<Word, WordError> {
        if !self.alphabet.contains(&sym) {
            return Err(WordError::OutsideDomain { sym });
        }
        Ok(self
            .images
            .get(&sym)
            .cloned()
            .unwrap_or_else(|| Word::letter(sym, 1)))
    }

    /// Apply to a word: image of `v^-1` is `(image of v)^-1`; the result is
    /// freely reduced.
    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        let mut out = Word::empty();
        for &(s, e) in w.letters() {
            let img = self.image_of(s)?;
            let img = if e < 0 { img.inverse() } else { img };
            out = out.concat(&img);
        }
        Ok(out)
    }

    /// The composite substitution `self . inner` (apply `inner` first):
    /// `v -> self(inner(v))`.
    pub fn compose(&self, inner: &Substitution) -> Result<Substitution, WordError> {
        let mut out = Substitution {
            alphabet: self.alphabet.clone(),
            images: BTreeMap::new(),
        };
        for &sym in &self.alphabet {
            let img = self.apply(&inner.image_of(sym)?)?;
            out.images.insert(sym, img);
        }
        Ok(out)
    }
}
