//! TOML job files: group, signature, images, and optional extras.
//!
//! ```toml
//! [group]
//! kind = "symmetric"          # "cyclic" | "symmetric" | "dihedral" | "table"
//! degree = 3                  # symmetric: degree of the permutation group
//! # n = 6                     # cyclic: order
//! # m = 6                     # dihedral: half the order (rotation count)
//! # table = [[0,1],[1,0]]     # table: full multiplication table, 0-based
//! names = ["1","A","B","C","D","E"]   # optional element names
//!
//! [signature]
//! genus = 0
//! periods = [2, 2, 2, 2, 2, 2, 3, 3]
//!
//! [phi]
//! a = []                      # handle images, one pair per base-genus handle
//! b = []
//! xi = ["A", "A", "(2 3)", 2, "(1 3)", 3, "D", "E"]
//!
//! [transversal]               # optional: override the minimal transversal
//! words = ["1", "x1", "x3", "x5", "x7", "x8"]
//!
//! [harvey]                    # optional: default move program
//! program = "V1,V2"
//! ```
//!
//! An element reference is an integer index (0-based), an element name, `id`
//! or `()` for the identity, or — for symmetric groups only — cycle notation
//! on 1-based points such as `"(1 2 3)"`, composed right to left as
//! functions.

use serde::Deserialize;
use skmap::{Elem, FiniteGroup, GeneratingVector, OrbifoldSignature, Word};
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobFile {
    group: GroupSpec,
    signature: SignatureSpec,
    phi: PhiSpec,
    transversal: Option<TransversalSpec>,
    harvey: Option<HarveySpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    kind: String,
    n: Option<usize>,
    degree: Option<usize>,
    m: Option<usize>,
    table: Option<Vec<Vec<usize>>>,
    names: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureSpec {
    genus: usize,
    periods: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiSpec {
    a: Vec<ElemRef>,
    b: Vec<ElemRef>,
    xi: Vec<ElemRef>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransversalSpec {
    words: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HarveySpec {
    program: String,
}

/// One element reference: a 0-based index or a textual form.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ElemRef {
    Index(usize),
    Text(String),
}

/// A loaded, shape-checked job. The images are resolved to element indices
/// but not yet validated as a surface-kernel map.
pub struct Job {
    pub group: FiniteGroup,
    pub sig: OrbifoldSignature,
    pub vec: GeneratingVector,
    pub transversal_words: Option<Vec<Word>>,
    pub program: Option<String>,
}

fn build_group(spec: &GroupSpec) -> Result<(FiniteGroup, Option<usize>), String> {
    let need = |field: Option<usize>, name: &str, kind: &str| {
        field.ok_or_else(|| format!("group kind {kind:?} needs `{name}`"))
    };
    let (group, degree) = match spec.kind.as_str() {
        "cyclic" => {
            let n = need(spec.n, "n", "cyclic")?;
            (
                FiniteGroup::cyclic(n).map_err(|e| e.to_string())?,
                None,
            )
        }
        "symmetric" => {
            let d = need(spec.degree, "degree", "symmetric")?;
            (
                FiniteGroup::symmetric(d).map_err(|e| e.to_string())?,
                Some(d),
            )
        }
        "dihedral" => {
            let m = need(spec.m, "m", "dihedral")?;
            (
                FiniteGroup::dihedral(m).map_err(|e| e.to_string())?,
                None,
            )
        }
        "table" => {
            let table = spec
                .table
                .clone()
                .ok_or("group kind \"table\" needs `table`")?;
            (FiniteGroup::from_table(table).map_err(|e| e.to_string())?, None)
        }
        other => {
            return Err(format!(
                "unknown group kind {other:?} (expected \"cyclic\", \"symmetric\", \"dihedral\", or \"table\")"
            ))
        }
    };
    let group = match &spec.names {
        Some(names) => group
            .with_names(names.clone())
            .map_err(|e| e.to_string())?,
        None => group,
    };
    Ok((group, degree))
}

/// Parse cycle notation on 1-based points into a 0-based one-line image
/// array. Cycles compose right to left as functions: `(1 2)(2 3)` sends 3 to
/// 2 and then 2 to 1.
fn parse_cycles(text: &str, degree: usize) -> Result<Vec<usize>, String> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(open) = rest.strip_prefix('(') else {
            return Err(format!("expected '(' in cycle notation {text:?}"));
        };
        let Some(close) = open.find(')') else {
            return Err(format!("unclosed cycle in {text:?}"));
        };
        let mut points = Vec::new();
        for tok in open[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let p: usize = tok
                .parse()
                .map_err(|_| format!("bad point {tok:?} in cycle notation {text:?}"))?;
            if p == 0 || p > degree {
                return Err(format!(
                    "point {p} out of range 1..={degree} in cycle notation {text:?}"
                ));
            }
            if points.contains(&p) {
                return Err(format!("repeated point {p} in cycle notation {text:?}"));
            }
            points.push(p);
        }
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = open[close + 1..].trim_start();
    }
    let mut one_line = Vec::with_capacity(degree);
    for p in 0..degree {
        let mut v = p + 1;
        for cycle in cycles.iter().rev() {
            if let Some(i) = cycle.iter().position(|&pt| pt == v) {
                v = cycle[(i + 1) % cycle.len()];
            }
        }
        one_line.push(v - 1);
    }
    Ok(one_line)
}

fn resolve_elem(
    group: &FiniteGroup,
    degree: Option<usize>,
    r: &ElemRef,
    what: &str,
) -> Result<Elem, String> {
    match r {
        ElemRef::Index(i) => {
            if *i < group.order() {
                Ok(*i)
            } else {
                Err(format!(
                    "{what}: element index {i} out of range for a group of order {}",
                    group.order()
                ))
            }
        }
        ElemRef::Text(t) => {
            if let Some(e) = group.element_by_name(t) {
                return Ok(e);
            }
            if t == "id" || t == "()" {
                return Ok(group.identity());
            }
            if let Some(d) = degree {
                if t.trim_start().starts_with('(') {
                    let one_line = parse_cycles(t, d)?;
                    let perms = skmap::group::symmetric_permutations(d);
                    return perms
                        .iter()
                        .position(|p| *p == one_line)
                        .ok_or_else(|| format!("{what}: internal permutation lookup failed"));
                }
            }
            Err(format!(
                "{what}: unknown element {t:?} (use an index, an element name, `id`, or cycle notation for symmetric groups)"
            ))
        }
    }
}

/// Load a job file. Errors are shape-level diagnostics (parse failures).
pub fn load(path: &Path) -> Result<Job, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: JobFile = toml::from_str(&text).map_err(|e| format!("{e}"))?;
    let (group, degree) = build_group(&file.group)?;
    let sig = OrbifoldSignature::new(file.signature.genus, file.signature.periods.clone())
        .map_err(|e| e.to_string())?;
    let resolve_list = |refs: &[ElemRef], what: &str| -> Result<Vec<Elem>, String> {
        refs.iter()
            .enumerate()
            .map(|(i, r)| resolve_elem(&group, degree, r, &format!("{what}[{i}]")))
            .collect()
    };
    let a = resolve_list(&file.phi.a, "phi.a")?;
    let b = resolve_list(&file.phi.b, "phi.b")?;
    let xi = resolve_list(&file.phi.xi, "phi.xi")?;
    let vec = GeneratingVector::new(a, b, xi).map_err(|e| e.to_string())?;
    if !vec.matches_signature(&sig) {
        return Err(format!(
            "phi shape mismatch: {} handle pairs and {} elliptic images for a signature with genus {} and {} periods",
            vec.genus(),
            vec.r(),
            sig.genus(),
            sig.r()
        ));
    }
    let transversal_words = match &file.transversal {
        Some(t) => Some(parse_words(&t.words)?),
        None => None,
    };
    Ok(Job {
        group,
        sig,
        vec,
        transversal_words,
        program: file.harvey.map(|h| h.program),
    })
}

fn parse_words(words: &[String]) -> Result<Vec<Word>, String> {
    words
        .iter()
        .map(|w| Word::parse(w).map_err(|e| format!("bad transversal word {w:?}: {e}")))
        .collect()
}

/// Load a transversal override file: TOML with a `words` array.
pub fn load_transversal(path: &Path) -> Result<Vec<Word>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let spec: TransversalSpec = toml::from_str(&text).map_err(|e| format!("{e}"))?;
    parse_words(&spec.words)
}
