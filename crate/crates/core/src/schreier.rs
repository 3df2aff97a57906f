//! Coset-rewriting of the kernel subgroup: minimal Schreier transversals,
//! the rewriting map τ expressing kernel words over coset-indexed generators
//! `S[K,v] = T_K v T̄(Kv)⁻¹`, the raw kernel presentation, and its Tietze
//! simplification down to the canonical one-relation surface shape.

use crate::group::{Elem, FiniteGroup};
use crate::kernel::{evaluate, kernel_genus, EvalError, GeneratingVector, GenusError};
use crate::word::{push_reduced, GenSymbol, OrbifoldSignature, Word};
use std::collections::BTreeMap;
use thiserror::Error;

/// A kernel generator `S[K,v]`: coset `K` (identified with a group element)
/// and alphabet symbol `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KernelGen {
    pub coset: Elem,
    pub sym: GenSymbol,
}

impl KernelGen {
    pub fn new(coset: Elem, sym: GenSymbol) -> Self {
        KernelGen { coset, sym }
    }

    /// Human label `S[<coset name>,<symbol>]`.
    pub fn label(&self, group: &FiniteGroup) -> String {
        format!("S[{},{}]", group.name(self.coset), self.sym)
    }

    /// Pipeline ordering key: coset first, then alphabet position.
    fn order_key(&self, g0: usize) -> (Elem, usize) {
        (self.coset, self.sym.rank(g0))
    }
}

/// A freely reduced word over [`KernelGen`]s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct KernelWord {
    letters: Vec<(KernelGen, i8)>,
}

impl KernelWord {
    pub fn empty() -> Self {
        KernelWord::default()
    }

    pub fn letter(gen: KernelGen, exp: i8) -> Self {
        assert!(exp == 1 || exp == -1, "exponent must be +-1");
        KernelWord {
            letters: vec![(gen, exp)],
        }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (KernelGen, i8)>) -> Self {
        let mut out = KernelWord::empty();
        for (g, e) in letters {
            out.push(g, e);
        }
        out
    }

    pub fn push(&mut self, gen: KernelGen, exp: i8) {
        assert!(exp == 1 || exp == -1, "exponent must be +-1");
        push_reduced(&mut self.letters, (gen, exp));
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[(KernelGen, i8)] {
        &self.letters
    }

    pub fn concat(&self, other: &KernelWord) -> KernelWord {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        KernelWord { letters }
    }

    pub fn inverse(&self) -> KernelWord {
        KernelWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Replace every occurrence of `gen` by `expr` (inverted for negative
    /// occurrences) and freely reduce.
    pub fn substitute(&self, gen: KernelGen, expr: &KernelWord) -> KernelWord {
        let inv = expr.inverse();
        let mut out = KernelWord::empty();
        for &(g, e) in &self.letters {
            if g == gen {
                let rep = if e == 1 { expr } else { &inv };
                for &(h, f) in &rep.letters {
                    out.push(h, f);
                }
            } else {
                out.push(g, e);
            }
        }
        out
    }

    /// Occurrence count of each generator, both signs pooled.
    pub fn occurrences(&self) -> BTreeMap<KernelGen, usize> {
        let mut counts = BTreeMap::new();
        for &(g, _) in &self.letters {
            *counts.entry(g).or_insert(0) += 1;
        }
        counts
    }

    /// Net exponent sum of each generator (the abelianized word).
    pub fn exponent_sums(&self) -> BTreeMap<KernelGen, i64> {
        let mut sums = BTreeMap::new();
        for &(g, e) in &self.letters {
            *sums.entry(g).or_insert(0i64) += i64::from(e);
        }
        sums
    }

    /// Human label, space-separated letters; the empty word prints as `1`.
    pub fn label(&self, group: &FiniteGroup) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|(g, e)| {
                let mut s = g.label(group);
                if *e < 0 {
                    s.push_str("^-1");
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Where a relation of the raw presentation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationSource {
    /// `τ(T_K R T_K⁻¹)` for the long relation `R`, conjugated to coset `K`.
    LongConjugate { coset: Elem },
    /// `τ(T_K x_j^{m_j} T_K⁻¹)` for period `j`, based at the minimal coset of
    /// its `ξ_j`-translation cycle.
    EllipticPower { period_index: usize, base_coset: Elem },
    /// `S[K,v] = 1` for a generator whose expansion freely cancels.
    TrivialGenerator { gen: KernelGen },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub word: KernelWord,
    pub source: RelationSource,
}

/// A presentation of the kernel surface group: generators in a fixed order,
/// relations with provenance, and the elimination log (empty for the raw
/// presentation; for a simplified one, each entry `(s, w)` records that
/// generator `s` was removed and equals `w` over the generators that remained
/// at that point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPresentation {
    pub signature: OrbifoldSignature,
    pub group_order: usize,
    /// Kernel genus `g`; the simplified presentation must have `2g`
    /// generators.
    pub genus_expected: usize,
    pub generators: Vec<KernelGen>,
    pub relations: Vec<Relation>,
    pub eliminated: Vec<(KernelGen, KernelWord)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchreierError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Genus(#[from] GenusError),
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
    #[error("coset {coset} is unreachable from the identity: the images do not generate the group")]
    UnreachableCoset { coset: Elem },
    #[error("word lies outside the kernel; it lands in coset {coset}")]
    NotInKernel { coset: Elem },
    #[error(
        "coset cycle of period {period_index} at coset {base_coset} has length {got}, \
         but the signature demands {expected}"
    )]
    PeriodMismatch {
        period_index: usize,
        base_coset: Elem,
        got: usize,
        expected: usize,
    },
    #[error(
        "simplification stalled at {} generators and {} relations (expected {} and 1)",
        .partial.generators.len(),
        .partial.relations.len(),
        .partial.genus_expected * 2
    )]
    SimplificationIncomplete { partial: Box<KernelPresentation> },
    #[error("period m{period_index} = {period} does not divide the group order {order}")]
    PeriodNotDividing {
        period_index: usize,
        period: usize,
        order: usize,
    },
    #[error("expected exactly one relation, found {count}")]
    NotSingleRelation { count: usize },
    #[error("the relation is freely empty")]
    EmptyRelation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransversalError {
    #[error("transversal has {got} representatives but the group has order {expected}")]
    WrongSize { got: usize, expected: usize },
    #[error("the identity coset's representative must be the empty word, found {found:?}")]
    RootNotEmpty { found: String },
    #[error("representative for coset {coset} evaluates to coset {landed}")]
    WrongCoset { coset: Elem, landed: Elem },
    #[error("representative for coset {coset} has a prefix that is not itself a representative")]
    NotPrefixClosed { coset: Elem },
    #[error(
        "representative for coset {coset} has length {len} but the coset graph \
         distance from the identity is {distance}"
    )]
    NotMinimal {
        coset: Elem,
        len: usize,
        distance: usize,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Right-coset representatives for the kernel, one freely reduced word per
/// group element, with the identity represented by the empty word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierTransversal {
    reps: Vec<Word>,
}

impl SchreierTransversal {
    /// Wrap caller-supplied representative words (index = coset). Use
    /// [`validate_transversal`] to check the Schreier and minimality
    /// conditions.
    pub fn from_words(reps: Vec<Word>) -> Self {
        SchreierTransversal { reps }
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, coset: Elem) -> &Word {
        &self.reps[coset]
    }

    pub fn words(&self) -> &[Word] {
        &self.reps
    }

    /// Expand `S[K,v]` back into an alphabet word `T_K v T̄(Kφ(v))⁻¹`.
    pub fn expand_gen(
        &self,
        group: &FiniteGroup,
        vec: &GeneratingVector,
        gen: KernelGen,
    ) -> Result<Word, EvalError> {
        let target = group.mul(gen.coset, vec.image_of(gen.sym)?);
        Ok(self
            .rep(gen.coset)
            .concat(&Word::letter(gen.sym, 1))
            .concat(&self.rep(target).inverse()))
    }

    /// Expand a whole kernel word back into alphabet letters.
    pub fn expand_word(
        &self,
        group: &FiniteGroup,
        vec: &GeneratingVector,
        w: &KernelWord,
    ) -> Result<Word, EvalError> {
        let mut out = Word::empty();
        for &(g, e) in w.letters() {
            let x = self.expand_gen(group, vec, g)?;
            out = out.concat(&if e < 0 { x.inverse() } else { x });
        }
        Ok(out)
    }

    /// True iff `S[K,v]` expands to the freely trivial word, i.e.
    /// `T_K v` freely reduces to `T̄(Kφ(v))`.
    pub fn is_trivial_gen(
        &self,
        group: &FiniteGroup,
        vec: &GeneratingVector,
        gen: KernelGen,
    ) -> Result<bool, EvalError> {
        let target = group.mul(gen.coset, vec.image_of(gen.sym)?);
        Ok(self.rep(gen.coset).concat(&Word::letter(gen.sym, 1)) == *self.rep(target))
    }
}

fn check_shape(sig: &OrbifoldSignature, vec: &GeneratingVector) -> Result<(), SchreierError> {
    if !vec.matches_signature(sig) {
        return Err(SchreierError::ShapeMismatch {
            a: vec.genus(),
            xi: vec.r(),
            genus: sig.genus(),
            r: sig.r(),
        });
    }
    Ok(())
}

/// Breadth-first minimal Schreier transversal: from the identity coset,
/// explore by all positive alphabet symbols in order, then all inverses in
/// the same order, FIFO. Every representative is a shortest word for its
/// coset, and the set is prefix-closed.
pub fn minimal_transversal(
    group: &FiniteGroup,
    sig: &OrbifoldSignature,
    vec: &GeneratingVector,
) -> Result<SchreierTransversal, SchreierError> {
    check_shape(sig, vec)?;
    vec.check_elements(group)?;
    let n = group.order();
    let alphabet = sig.alphabet();
    let mut moves = Vec::with_capacity(2 * alphabet.len());
    for &sym in &alphabet {
        moves.push((sym, 1i8, vec.image_of(sym)?));
    }
    for &sym in &alphabet {
        moves.push((sym, -1i8, group.inv(vec.image_of(sym)?)));
    }

    let mut reps: Vec<Option<Word>> = vec![None; n];
    reps[group.identity()] = Some(Word::empty());
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(group.identity());
    while let Some(u) = queue.pop_front() {
        for &(sym, exp, step) in &moves {
            let v = group.mul(u, step);
            if reps[v].is_none() {
                let mut w = reps[u].clone().unwrap();
                w.push(sym, exp);
                reps[v] = Some(w);
                queue.push_back(v);
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for (coset, r) in reps.into_iter().enumerate() {
        match r {
            Some(w) => out.push(w),
            None => return Err(SchreierError::UnreachableCoset { coset }),
        }
    }
    Ok(SchreierTransversal { reps: out })
}

/// Check the Schreier conditions and minimality of a (possibly user-supplied)
/// transversal: correct size, empty word at the identity, each representative
/// lands in its own coset, prefix closure, and shortest length per coset
/// (compared against an independent breadth-first distance computation).
pub fn validate_transversal(
    group: &FiniteGroup,
    sig: &OrbifoldSignature,
    vec: &GeneratingVector,
    t: &SchreierTransversal,
) -> Result<(), TransversalError> {
    let n = group.order();
    if t.size() != n {
        return Err(TransversalError::WrongSize {
            got: t.size(),
            expected: n,
        });
    }
    if !t.rep(group.identity()).is_empty() {
        return Err(TransversalError::RootNotEmpty {
            found: t.rep(group.identity()).to_string(),
        });
    }
    for coset in 0..n {
        let landed = evaluate(group, vec, t.rep(coset))?;
        if landed != coset {
            return Err(TransversalError::WrongCoset { coset, landed });
        }
        let letters = t.rep(coset).letters();
        for cut in 0..letters.len() {
            let prefix = Word::from_letters(letters[..cut].iter().copied());
            let at = evaluate(group, vec, &prefix)?;
            if *t.rep(at) != prefix {
                return Err(TransversalError::NotPrefixClosed { coset });
            }
        }
    }
    // independent shortest-path distances in the coset graph
    let mut dist: Vec<Option<usize>> = vec![None; n];
    dist[group.identity()] = Some(0);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(group.identity());
    let mut steps = Vec::new();
    for sym in sig.alphabet() {
        let img = vec.image_of(sym)?;
        steps.push(img);
        steps.push(group.inv(img));
    }
    while let Some(u) = queue.pop_front() {
        for &s in &steps {
            let v = group.mul(u, s);
            if dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    for (coset, d) in dist.iter().enumerate() {
        if let Some(d) = *d {
            if t.rep(coset).len() != d {
                return Err(TransversalError::NotMinimal {
                    coset,
                    len: t.rep(coset).len(),
                    distance: d,
                });
            }
        }
    }
    Ok(())
}

/// The rewriting map τ: a word in the alphabet that lies in the kernel is
/// rewritten over the `S[K,v]` generators by tracking the running coset. A
/// positive letter `v` at coset `K` emits `S[K,v]` and advances to `Kφ(v)`;
/// a negative letter first retreats to `Kφ(v)⁻¹` and emits that coset's
/// letter inverted. The output is freely reduced.
pub fn rewrite_tau(
    group: &FiniteGroup,
    vec: &GeneratingVector,
    w: &Word,
) -> Result<KernelWord, SchreierError> {
    vec.check_elements(group)?;
    let mut out = KernelWord::empty();
    let mut k = group.identity();
    for &(sym, exp) in w.letters() {
        let img = vec.image_of(sym)?;
        if exp == 1 {
            out.push(KernelGen::new(k, sym), 1);
            k = group.mul(k, img);
        } else {
            k = group.mul(k, group.inv(img));
            out.push(KernelGen::new(k, sym), -1);
        }
    }
    if k != group.identity() {
        return Err(SchreierError::NotInKernel { coset: k });
    }
    Ok(out)
}

/// Strip the letters of `w` whose generator is freely trivial for `t`, then
/// freely reduce. This is how single-letter bookkeeping generators disappear
/// from quoted rewriting results.
pub fn drop_trivial_letters(
    group: &FiniteGroup,
    vec: &GeneratingVector,
    t: &SchreierTransversal,
    w: &KernelWord,
) -> Result<KernelWord, EvalError> {
    let mut out = KernelWord::empty();
    for &(g, e) in w.letters() {
        if !t.is_trivial_gen(group, vec, g)? {
            out.push(g, e);
        }
    }
    Ok(out)
}

/// The raw kernel presentation:
///
/// * generators `S[K,v]`, symbol-major then coset-minor;
/// * for every coset `K`, the rewritten long-relation conjugate
///   `τ(T_K R T_K⁻¹)`;
/// * for every period `j`, one rewritten power relation per cycle of the
///   right-translation action of `ξ_j` on cosets, based at the cycle's
///   minimal coset (translates within a cycle rewrite to the same relation
///   set, so one representative suffices);
/// * one single-letter relation per freely trivial generator, in (coset,
///   symbol) order.
pub fn raw_presentation(
    group: &FiniteGroup,
    sig: &OrbifoldSignature,
    vec: &GeneratingVector,
    t: &SchreierTransversal,
) -> Result<KernelPresentation, SchreierError> {
    check_shape(sig, vec)?;
    vec.check_elements(group)?;
    let n = group.order();
    let genus_expected = kernel_genus(sig, n)?;

    let mut generators = Vec::with_capacity(sig.num_symbols() * n);
    for sym in sig.alphabet() {
        for coset in 0..n {
            generators.push(KernelGen::new(coset, sym));
        }
    }

    let mut relations = Vec::new();
    let long = sig.long_relation();
    for coset in 0..n {
        let conj = t.rep(coset).concat(&long).concat(&t.rep(coset).inverse());
        relations.push(Relation {
            word: rewrite_tau(group, vec, &conj)?,
            source: RelationSource::LongConjugate { coset },
        });
    }
    for j in 1..=sig.r() {
        let m = sig.periods()[j - 1];
        let xi = vec.image_of(GenSymbol::X(j))?;
        let mut seen = vec![false; n];
        for base in 0..n {
            if seen[base] {
                continue;
            }
            let mut len = 0;
            let mut c = base;
            loop {
                seen[c] = true;
                len += 1;
                c = group.mul(c, xi);
                if c == base {
                    break;
                }
            }
            if len != m {
                return Err(SchreierError::PeriodMismatch {
                    period_index: j,
                    base_coset: base,
                    got: len,
                    expected: m,
                });
            }
            let power = Word::from_letters((0..m).map(|_| (GenSymbol::X(j), 1)));
            let conj = t.rep(base).concat(&power).concat(&t.rep(base).inverse());
            relations.push(Relation {
                word: rewrite_tau(group, vec, &conj)?,
                source: RelationSource::EllipticPower {
                    period_index: j,
                    base_coset: base,
                },
            });
        }
    }
    let mut trivial = Vec::new();
    for &gen in &generators {
        if t.is_trivial_gen(group, vec, gen)? {
            trivial.push(gen);
        }
    }
    trivial.sort_by_key(|g| g.order_key(sig.genus()));
    debug_assert_eq!(trivial.len(), n - 1);
    for gen in trivial {
        relations.push(Relation {
            word: KernelWord::letter(gen, 1),
            source: RelationSource::TrivialGenerator { gen },
        });
    }

    Ok(KernelPresentation {
        signature: sig.clone(),
        group_order: n,
        genus_expected,
        generators,
        relations,
        eliminated: Vec::new(),
    })
}

/// Tietze-simplify a presentation:
///
/// 1. delete the freely trivial generators (single-letter bookkeeping
///    relations), substituting the empty word everywhere;
/// 2. repeatedly pick, among relations containing some generator exactly once
///    (both signs pooled), the one minimizing (length, work-list position);
///    within it eliminate the (coset, symbol)-least once-occurring generator,
///    solve for it, substitute everywhere, and log the elimination;
/// 3. drop relations that have become freely empty.
///
/// The result must have exactly `2g` generators and a single relation in
/// which every generator appears exactly once with each sign; otherwise the
/// partial result is returned inside the error.
pub fn simplify(p: &KernelPresentation) -> Result<KernelPresentation, SchreierError> {
    let g0 = p.signature.genus();
    let mut live = p.generators.clone();
    let mut log = p.eliminated.clone();

    // phase 1: trivial generators
    let mut trivial: Vec<KernelGen> = p
        .relations
        .iter()
        .filter_map(|r| match r.source {
            RelationSource::TrivialGenerator { gen } => Some(gen),
            _ => None,
        })
        .collect();
    trivial.sort_by_key(|g| g.order_key(g0));
    for &t in &trivial {
        log.push((t, KernelWord::empty()));
        live.retain(|&g| g != t);
    }
    let mut work: Vec<(KernelWord, RelationSource)> = Vec::new();
    for r in &p.relations {
        if matches!(r.source, RelationSource::TrivialGenerator { .. }) {
            continue;
        }
        let stripped = KernelWord::from_letters(
            r.word
                .letters()
                .iter()
                .filter(|(g, _)| !trivial.contains(g))
                .copied(),
        );
        if !stripped.is_empty() {
            work.push((stripped, r.source));
        }
    }

    // phase 2: eliminate once-occurring generators
    loop {
        let mut best: Option<(usize, usize)> = None; // (length, index)
        for (i, (w, _)) in work.iter().enumerate() {
            if w.occurrences().values().any(|&c| c == 1) {
                let key = (w.len(), i);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, idx)) = best else { break };
        let (w, _) = work[idx].clone();
        let once: Vec<KernelGen> = w
            .occurrences()
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(g, _)| g)
            .collect();
        let s = *once
            .iter()
            .min_by_key(|g| g.order_key(g0))
            .expect("candidate relation has a once-occurring generator");
        let pos = w
            .letters()
            .iter()
            .position(|&(g, _)| g == s)
            .expect("generator occurs in its relation");
        let exp = w.letters()[pos].1;
        let before = KernelWord::from_letters(w.letters()[..pos].iter().copied());
        let after = KernelWord::from_letters(w.letters()[pos + 1..].iter().copied());
        // before * s^exp * after = 1  =>  s = before^-1 after^-1 (exp = +1)
        //                                 s = after before      (exp = -1)
        let expr = if exp == 1 {
            before.inverse().concat(&after.inverse())
        } else {
            after.concat(&before)
        };
        log.push((s, expr.clone()));
        live.retain(|&g| g != s);
        work.remove(idx);
        for (w, _) in work.iter_mut() {
            *w = w.substitute(s, &expr);
        }
    }

    // phase 3: drop freely empty relations
    work.retain(|(w, _)| !w.is_empty());

    let result = KernelPresentation {
        signature: p.signature.clone(),
        group_order: p.group_order,
        genus_expected: p.genus_expected,
        generators: live,
        relations: work
            .into_iter()
            .map(|(word, source)| Relation { word, source })
            .collect(),
        eliminated: log,
    };

    let shape_ok = result.generators.len() == 2 * result.genus_expected
        && result.relations.len() == 1
        && {
            let rel = &result.relations[0].word;
            let mut plus: BTreeMap<KernelGen, usize> = BTreeMap::new();
            let mut minus: BTreeMap<KernelGen, usize> = BTreeMap::new();
            for &(g, e) in rel.letters() {
                if e == 1 {
                    *plus.entry(g).or_insert(0) += 1;
                } else {
                    *minus.entry(g).or_insert(0) += 1;
                }
            }
            result.generators.iter().all(|g| {
                plus.get(g).copied().unwrap_or(0) == 1 && minus.get(g).copied().unwrap_or(0) == 1
            }) && rel.len() == 2 * result.generators.len()
        };
    if shape_ok {
        Ok(result)
    } else {
        Err(SchreierError::SimplificationIncomplete {
            partial: Box::new(result),
        })
    }
}

/// True iff the presentation's single relation contains every generator
/// exactly once with each sign and every generator is linked to a partner:
/// reading the relation cyclically, some other generator has exactly one
/// occurrence strictly between the two occurrences of this one (signs
/// disregarded) — the interleaving pattern `… u … v … u⁻¹ … v⁻¹ …`.
pub fn linkedness_check(p: &KernelPresentation) -> Result<bool, SchreierError> {
    if p.relations.len() != 1 {
        return Err(SchreierError::NotSingleRelation {
            count: p.relations.len(),
        });
    }
    let rel = &p.relations[0].word;
    if rel.is_empty() {
        return Err(SchreierError::EmptyRelation);
    }
    let occ = rel.occurrences();
    for g in &p.generators {
        if occ.get(g).copied().unwrap_or(0) != 2 {
            return Ok(false);
        }
    }
    let sums = rel.exponent_sums();
    if sums.values().any(|&s| s != 0) {
        return Ok(false);
    }
    let letters = rel.letters();
    for g in &p.generators {
        let positions: Vec<usize> = letters
            .iter()
            .enumerate()
            .filter(|(_, (h, _))| h == g)
            .map(|(i, _)| i)
            .collect();
        let (i, j) = (positions[0], positions[1]);
        // a partner has exactly one occurrence strictly inside the arc (i, j);
        // its other occurrence then lies in the complementary cyclic arc
        let mut inside: BTreeMap<KernelGen, usize> = BTreeMap::new();
        for &(h, _) in &letters[i + 1..j] {
            *inside.entry(h).or_insert(0) += 1;
        }
        let linked = inside
            .iter()
            .any(|(&h, &c)| c == 1 && occ.get(&h).copied().unwrap_or(0) == 2);
        if !linked {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The claimed generator/relation counts for the raw presentation after its
/// bookkeeping layer is folded away: `(2ng₀ + nr, 1 + Σ_j n/m_j)`. The raw
/// presentation as constructed carries `2(n−1)` additional relations — the
/// `n−1` single-letter trivial-generator relations, plus the `n−1`
/// long-relation conjugates beyond the single independent one.
pub fn count_check(
    sig: &OrbifoldSignature,
    group: &FiniteGroup,
) -> Result<(usize, usize), SchreierError> {
    let n = group.order();
    let mut rels = 1;
    for (idx, &m) in sig.periods().iter().enumerate() {
        if !n.is_multiple_of(m) {
            return Err(SchreierError::PeriodNotDividing {
                period_index: idx + 1,
                period: m,
                order: n,
            });
        }
        rels += n / m;
    }
    Ok((2 * n * sig.genus() + n * sig.r(), rels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
            .unwrap()
            .with_names(vec![
                "1".into(),
                "A".into(),
                "B".into(),
                "C".into(),
                "D".into(),
                "E".into(),
            ])
            .unwrap()
    }

    fn s3_sig() -> OrbifoldSignature {
        OrbifoldSignature::new(0, vec![2, 2, 2, 2, 2, 2, 3, 3]).unwrap()
    }

    fn s3_vec() -> GeneratingVector {
        GeneratingVector::new(vec![], vec![], vec![1, 1, 2, 2, 3, 3, 4, 5]).unwrap()
    }

    fn pipeline(
        group: &FiniteGroup,
        sig: &OrbifoldSignature,
        vec: &GeneratingVector,
    ) -> (SchreierTransversal, KernelPresentation) {
        let t = minimal_transversal(group, sig, vec).unwrap();
        let p = raw_presentation(group, sig, vec, &t).unwrap();
        (t, p)
    }

    #[test]
    fn transversal_of_running_example() {
        let (g, sig, v) = (s3(), s3_sig(), s3_vec());
        let t = minimal_transversal(&g, &sig, &v).unwrap();
        let expected = ["1", "x1", "x3", "x5", "x7", "x8"];
        for (coset, text) in expected.iter().enumerate() {
            assert_eq!(*t.rep(coset), Word::parse(text).unwrap(), "coset {coset}");
        }
        validate_transversal(&g, &sig, &v, &t).unwrap();
    }

    #[test]
    fn transversal_of_cyclic_three() {
        // cyclic group of order 3, two periods, images 1 and 2: both
        // non-identity cosets are reached by a positive one-letter word
        let g = FiniteGroup::cyclic(3).unwrap();
        let sig = OrbifoldSignature::new(0, vec![3, 3]).unwrap();
        let v = GeneratingVector::new(vec![], vec![], vec![1, 2]).unwrap();
        let t = minimal_transversal(&g, &sig, &v).unwrap();
        assert_eq!(*t.rep(0), Word::empty());
        assert_eq!(*t.rep(1), Word::parse("x1").unwrap());
        assert_eq!(*t.rep(2), Word::parse("x2").unwrap());
        validate_transversal(&g, &sig, &v, &t).unwrap();
    }

    #[test]
    fn non_surjective_images_leave_unreachable_cosets() {
        let g = s3();
        let sig = OrbifoldSignature::new(0, vec![3, 3, 3]).unwrap();
        let v = GeneratingVector::new(vec![], vec![], vec![4, 4, 4]).unwrap();
        assert!(matches!(
            minimal_transversal(&g, &sig, &v),
            Err(SchreierError::UnreachableCoset { .. })
        ));
    }

    #[test]
    fn transversal_validation_rejects_bad_data() {
        let (g, sig, v) = (s3(), s3_sig(), s3_vec());
        let t = minimal_transversal(&g, &sig, &v).unwrap();
        let mut words = t.words().to_vec();
        words[4] = Word::parse("x8 x8").unwrap(); // lands in E*E = D = coset 4, but longer than distance 1
        let bad = SchreierTransversal::from_words(words);
        assert!(matches!(
            validate_transversal(&g, &sig, &v, &bad),
            Err(TransversalError::NotMinimal { coset: 4, len: 2, distance: 1 })
        ));
        let mut words = t.words().to_vec();
        words[4] = Word::parse("x7 x7").unwrap(); // lands in coset E, not D
        let bad = SchreierTransversal::from_words(words);
        assert!(matches!(
            validate_transversal(&g, &sig, &v, &bad),
            Err(TransversalError::WrongCoset { coset: 4, landed: 5 })
        ));
        let bad = SchreierTransversal::from_words(t.words()[..4].to_vec());
        assert!(matches!(
            validate_transversal(&g, &sig, &v, &bad),
            Err(TransversalError::WrongSize { got: 4, expected: 6 })
        ));
    }

    #[test]
    fn tau_rewrites_elliptic_powers() {
        let (g, v) = (s3(), s3_vec());
        // x7^3: cosets 1 -> D -> E -> 1
        let w = rewrite_tau(&g, &v, &Word::parse("x7 x7 x7").unwrap()).unwrap();
        let expect: Vec<(KernelGen, i8)> = vec![
            (KernelGen::new(0, GenSymbol::X(7)), 1),
            (KernelGen::new(4, GenSymbol::X(7)), 1),
            (KernelGen::new(5, GenSymbol::X(7)), 1),
        ];
        assert_eq!(w.letters(), &expect[..]);
        // conjugate by x1: picks up bookkeeping letters S[1,x1] ... S[1,x1]^-1
        let w = rewrite_tau(&g, &v, &Word::parse("x1 x7 x7 x7 x1^-1").unwrap()).unwrap();
        assert_eq!(w.len(), 5);
        let sig = s3_sig();
        let t = minimal_transversal(&g, &sig, &v).unwrap();
        let stripped = drop_trivial_letters(&g, &v, &t, &w).unwrap();
        let expect: Vec<(KernelGen, i8)> = vec![
            (KernelGen::new(1, GenSymbol::X(7)), 1),
            (KernelGen::new(2, GenSymbol::X(7)), 1),
            (KernelGen::new(3, GenSymbol::X(7)), 1),
        ];
        assert_eq!(stripped.letters(), &expect[..]);
    }

    #[test]
    fn tau_of_empty_is_empty_and_non_kernel_words_fail() {
        let (g, v) = (s3(), s3_vec());
        assert!(rewrite_tau(&g, &v, &Word::empty()).unwrap().is_empty());
        assert!(matches!(
            rewrite_tau(&g, &v, &Word::parse("x1").unwrap()),
            Err(SchreierError::NotInKernel { coset: 1 })
        ));
    }

    #[test]
    fn tau_round_trips_through_expansion() {
        let (g, sig, v) = (s3(), s3_sig(), s3_vec());
        let t = minimal_transversal(&g, &sig, &v).unwrap();
        for text in ["x7 x7 x7", "x1 x7 x7 x7 x1^-1", "x1 x1", "x1 x3 x5 x3 x1"] {
            let w = Word::parse(text).unwrap();
            let val = evaluate(&g, &v, &w).unwrap();
            if val != g.identity() {
                continue;
            }
            let kw = rewrite_tau(&g, &v, &w).unwrap();
            assert_eq!(t.expand_word(&g, &v, &kw).unwrap(), w, "{text}");
        }
    }

    #[test]
    fn raw_presentation_counts_and_provenance() {
        let (g, sig, v) = (s3(), s3_sig(), s3_vec());
        let (_, p) = pipeline(&g, &sig, &v);
        assert_eq!(p.generators.len(), 48);
        assert_eq!(p.relations.len(), 33);
        assert_eq!(p.genus_expected, 8);
        let longs = p
            .relations
            .iter()
            .filter(|r| matches!(r.source, RelationSource::LongConjugate { .. }))
            .count();
        let elliptics = p
            .relations
            .iter()
            .filter(|r| matches!(r.source, RelationSource::EllipticPower { .. }))
            .count();
        let trivials = p
            .relations
            .iter()
            .filter(|r| matches!(r.source, RelationSource::TrivialGenerator { .. }))
            .count();
        assert_eq!((longs, elliptics, trivials), (6, 22, 5));
        // the five bookkeeping relations sit at the identity coset
        let trivial_labels: Vec<String> = p
            .relations
            .iter()
            .filter_map(|r| match r.source {
                RelationSource::TrivialGenerator { gen } => Some(gen.label(&g)),
                _ => None,
            })
            .collect();
        assert_eq!(
            trivial_labels,
            vec!["S[1,x1]", "S[1,x3]", "S[1,x5]", "S[1,x7]", "S[1,x8]"]
        );
    }

    #[test]
    fn raw_presentation_rejects_wrong_period_order() {
        let g = s3();
        // x7, x8 -> identity keeps the long relation in the kernel, but the
        // translation cycle at period 7 has length 1 instead of 3
        let sig = s3_sig();
        let v = GeneratingVector::new(vec![], vec![], vec![1, 1, 2, 2, 3, 3, 0, 0]).unwrap();
        let t = minimal_transversal(&g, &sig, &v).unwrap();
        assert!(matches!(
            raw_presentation(&g, &sig, &v, &t),
            Err(SchreierError::PeriodMismatch {
                period_index: 7,
                got: 1,
                expected: 3,
                ..
            })
        ));
    }

    #[test]
    fn deficiency_is_constant_through_simplification() {
        let (g, sig, v) = (s3(), s3_sig(), s3_vec());
        let (_, p) = pipeline(&g, &sig, &v);
        let def = p.generators.len() as i64 - p.relations.len() as i64;
        assert_eq!(def, 2 * p.genus_expected as i64 - 1);
        let s = simplify(&p).unwrap();
        let def = s.generators.len() as i64 - s.relations.len() as i64;
        assert_eq!(def, 2 * s.genus_expected as i64 - 1);
    }

    #[test]
    fn simplify_reaches_the_canonical_shape() {
        let (g, sig, v) = (s3(), s3_sig(), s3_vec());
        let (_, p) = pipeline(&g, &sig, &v);
        let s = simplify(&p).unwrap();
        assert_eq!(s.generators.len(), 16);
        assert_eq!(s.relations.len(), 1);
        assert_eq!(s.relations[0].word.len(), 32);
        assert_eq!(s.eliminated.len(), 32);
        assert_eq!(linkedness_check(&s), Ok(true));
        // simplify is idempotent on simplified input
        assert_eq!(simplify(&s).unwrap(), s);
    }

    #[test]
    fn trivial_group_gives_the_surface_presentation_directly() {
        let g = FiniteGroup::cyclic(1).unwrap();
        for g0 in [1, 2, 3] {
            let sig = OrbifoldSignature::new(g0, vec![]).unwrap();
            let v = GeneratingVector::new(vec![0; g0], vec![0; g0], vec![]).unwrap();
            let (_, p) = pipeline(&g, &sig, &v);
            assert_eq!(p.generators.len(), 2 * g0);
            assert_eq!(p.relations.len(), 1);
            assert_eq!(p.genus_expected, g0);
            let s = simplify(&p).unwrap();
            assert_eq!(s.generators, p.generators);
            assert_eq!(s.relations, p.relations);
            assert_eq!(linkedness_check(&s), Ok(true));
        }
    }

    #[test]
    fn order_two_group_with_six_branch_points() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let sig = OrbifoldSignature::new(0, vec![2; 6]).unwrap();
        let v = GeneratingVector::new(vec![], vec![], vec![1; 6]).unwrap();
        let (_, p) = pipeline(&g, &sig, &v);
        assert_eq!(p.generators.len(), 12);
        assert_eq!(p.genus_expected, 2);
        let s = simplify(&p).unwrap();
        assert_eq!(s.generators.len(), 4);
        assert_eq!(s.relations.len(), 1);
        assert_eq!(s.relations[0].word.len(), 8);
        assert_eq!(linkedness_check(&s), Ok(true));
    }

    #[test]
    fn spherical_kernel_cannot_reach_the_shape() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let sig = OrbifoldSignature::new(0, vec![2, 2]).unwrap();
        let v = GeneratingVector::new(vec![], vec![], vec![1, 1]).unwrap();
        let (_, p) = pipeline(&g, &sig, &v);
        assert_eq!(p.genus_expected, 0);
        match simplify(&p) {
            Err(SchreierError::SimplificationIncomplete { partial }) => {
                assert_eq!(partial.generators.len(), 0);
                assert_eq!(partial.relations.len(), 0);
            }
            other => panic!("expected incomplete simplification, got {other:?}"),
        }
    }

    #[test]
    fn flat_torus_kernel_simplifies_to_a_commutator() {
        // order-4 cyclic group, periods (2,4,4), images (2,1,1): kernel genus 1
        let g = FiniteGroup::cyclic(4).unwrap();
        let sig = OrbifoldSignature::new(0, vec![2, 4, 4]).unwrap();
        let v = GeneratingVector::new(vec![], vec![], vec![2, 1, 1]).unwrap();
        let (_, p) = pipeline(&g, &sig, &v);
        assert_eq!(p.generators.len(), 12);
        assert_eq!(p.relations.len(), 11);
        assert_eq!(p.genus_expected, 1);
        let s = simplify(&p).unwrap();
        assert_eq!(s.generators.len(), 2);
        assert_eq!(s.relations.len(), 1);
        assert_eq!(s.relations[0].word.len(), 4);
        assert_eq!(linkedness_check(&s), Ok(true));
    }

    #[test]
    fn pipeline_is_deterministic() {
        let (g, sig, v) = (s3(), s3_sig(), s3_vec());
        let (t1, p1) = pipeline(&g, &sig, &v);
        let (t2, p2) = pipeline(&g, &sig, &v);
        assert_eq!(t1, t2);
        assert_eq!(p1, p2);
        assert_eq!(simplify(&p1).unwrap(), simplify(&p2).unwrap());
    }

    #[test]
    fn linkedness_examples() {
        // a b a^-1 b^-1 on two generators: linked
        let a = KernelGen::new(0, GenSymbol::A(1));
        let b = KernelGen::new(0, GenSymbol::B(1));
        let sig = OrbifoldSignature::new(1, vec![]).unwrap();
        let commutator = KernelWord::from_letters([(a, 1), (b, 1), (a, -1), (b, -1)]);
        let p = KernelPresentation {
            signature: sig.clone(),
            group_order: 1,
            genus_expected: 1,
            generators: vec![a, b],
            relations: vec![Relation {
                word: commutator,
                source: RelationSource::LongConjugate { coset: 0 },
            }],
            eliminated: vec![],
        };
        assert_eq!(linkedness_check(&p), Ok(true));
        // a b a^-1 b on two generators: exponent sums nonzero -> not linked
        let mut bad = p.clone();
        bad.relations[0].word = KernelWord::from_letters([(a, 1), (b, 1), (a, -1), (b, 1)]);
        assert_eq!(linkedness_check(&bad), Ok(false));
        // a a^-1 reduces to the empty relation: shape error
        let mut empty = p.clone();
        empty.relations[0].word = KernelWord::from_letters([(a, 1), (a, -1)]);
        assert!(matches!(
            linkedness_check(&empty),
            Err(SchreierError::EmptyRelation)
        ));
        let mut two = p.clone();
        two.relations.push(two.relations[0].clone());
        assert!(matches!(
            linkedness_check(&two),
            Err(SchreierError::NotSingleRelation { count: 2 })
        ));
        // product of two disjoint commutators: each generator is linked to
        // its handle partner, so the whole relation passes
        let c = KernelGen::new(0, GenSymbol::A(2));
        let d = KernelGen::new(0, GenSymbol::B(2));
        let sig2 = OrbifoldSignature::new(2, vec![]).unwrap();
        let two_handles = KernelPresentation {
            signature: sig2,
            group_order: 1,
            genus_expected: 2,
            generators: vec![a, b, c, d],
            relations: vec![Relation {
                word: KernelWord::from_letters([
                    (a, 1),
                    (b, 1),
                    (a, -1),
                    (b, -1),
                    (c, 1),
                    (d, 1),
                    (c, -1),
                    (d, -1),
                ]),
                source: RelationSource::LongConjugate { coset: 0 },
            }],
            eliminated: vec![],
        };
        assert_eq!(linkedness_check(&two_handles), Ok(true));
        // a^-1 b c b^-1 c^-1 a is balanced and freely reduced, but the two
        // occurrences of a are cyclically adjacent: every other generator
        // occurs twice between them, so a has no partner
        let unlinked = KernelPresentation {
            signature: OrbifoldSignature::new(2, vec![]).unwrap(),
            group_order: 1,
            genus_expected: 2,
            generators: vec![a, b, c],
            relations: vec![Relation {
                word: KernelWord::from_letters([
                    (a, -1),
                    (b, 1),
                    (c, 1),
                    (b, -1),
                    (c, -1),
                    (a, 1),
                ]),
                source: RelationSource::LongConjugate { coset: 0 },
            }],
            eliminated: vec![],
        };
        assert_eq!(linkedness_check(&unlinked), Ok(false));
    }

    #[test]
    fn count_check_formula() {
        let g = s3();
        assert_eq!(count_check(&s3_sig(), &g), Ok((48, 23)));
        let trivial = FiniteGroup::cyclic(1).unwrap();
        let sig = OrbifoldSignature::new(3, vec![]).unwrap();
        assert_eq!(count_check(&sig, &trivial), Ok((6, 1)));
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let sig = OrbifoldSignature::new(0, vec![2; 6]).unwrap();
        assert_eq!(count_check(&sig, &z2), Ok((12, 7)));
        // period 4 does not divide 6
        let sig = OrbifoldSignature::new(0, vec![2, 4]).unwrap();
        assert!(matches!(
            count_check(&sig, &g),
            Err(SchreierError::PeriodNotDividing { period_index: 2, period: 4, order: 6 })
        ));
    }

    #[test]
    fn raw_counts_exceed_the_claimed_counts_by_bookkeeping() {
        // raw relation count = claimed count + 2(n-1): the n-1 single-letter
        // relations plus the n-1 long-relation conjugates beyond the first
        for (group, sig, v) in [
            (
                s3(),
                s3_sig(),
                s3_vec(),
            ),
            (
                FiniteGroup::cyclic(2).unwrap(),
                OrbifoldSignature::new(0, vec![2; 6]).unwrap(),
                GeneratingVector::new(vec![], vec![], vec![1; 6]).unwrap(),
            ),
            (
                FiniteGroup::cyclic(4).unwrap(),
                OrbifoldSignature::new(0, vec![2, 4, 4]).unwrap(),
                GeneratingVector::new(vec![], vec![], vec![2, 1, 1]).unwrap(),
            ),
        ] {
            let (gens, rels) = count_check(&sig, &group).unwrap();
            let (_, p) = pipeline(&group, &sig, &v);
            let n = group.order();
            assert_eq!(p.generators.len(), gens);
            assert_eq!(p.relations.len(), rels + 2 * (n - 1));
        }
    }

    #[test]
    fn genus_one_variant_has_hyperbolic_generators() {
        let g = s3();
        let sig = OrbifoldSignature::new(1, vec![2, 2, 2, 2, 2, 2, 3, 3]).unwrap();
        let v = GeneratingVector::new(vec![0], vec![0], vec![1, 1, 2, 2, 3, 3, 4, 5]).unwrap();
        let (_, p) = pipeline(&g, &sig, &v);
        assert_eq!(p.generators.len(), 60);
        assert_eq!(p.relations.len(), 33);
        assert_eq!(p.genus_expected, 14);
        let s = simplify(&p).unwrap();
        assert_eq!(s.generators.len(), 28);
        assert_eq!(s.relations.len(), 1);
        assert_eq!(s.relations[0].word.len(), 56);
        assert_eq!(linkedness_check(&s), Ok(true));
    }
}
