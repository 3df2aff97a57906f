//! Line-oriented machine-readable output format.
//!
//! A document is a sequence of lines; each line is a known key followed by
//! space-separated tokens. `dump` joins tokens with single spaces and
//! terminates every line with `\n`, so `parse(dump(doc))` followed by `dump`
//! reproduces the bytes exactly (the round-trip fixed point the output format
//! guarantees).
//!
//! Keys and shapes:
//!
//! ```text
//! stage <validate|genus|present|simplify|homology|harvey|orbit|adapted>
//! group-order <n>            base-genus <g0>         periods <m>*
//! genus <g>
//! long-relation <bool>       period-order <j> <bool> surjective <bool>   valid <bool>
//! generators <count>         relations <count>       generator <label>
//! coset <name> <word-letter>*
//! relation long-conjugate <name> : <letter>*
//! relation elliptic-power <j> <name> : <letter>*
//! relation trivial-generator <label> : <letter>*
//! eliminated <label> : <letter>*
//! linked <bool>
//! dimension <d>              basis <label>*
//! matrix <name>              row <int>*
//! representation <bool>      block <bool>
//! adapted <bool>             class <label> <case>    witness <label|none>
//! program <text>             ops <text>              cap <n>
//! count <n>                  truncated <bool>
//! a <name>*                  b <name>*               xi <name>*
//! vector <name>*
//! ```
//!
//! A kernel-generator label is `S[<coset>,<symbol>]`; a letter is a label (or
//! an orbifold symbol such as `x3` in `coset` lines) with an optional `^-1`
//! suffix, and the empty word is the single token `1`.

/// A validated machine document: lines of tokens.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Doc {
    lines: Vec<Vec<String>>,
}

impl Doc {
    pub fn new() -> Self {
        Doc::default()
    }

    /// Append a line: a key plus its tokens.
    pub fn push<I, S>(&mut self, key: &str, tokens: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut line = vec![key.to_string()];
        line.extend(tokens.into_iter().map(Into::into));
        self.lines.push(line);
    }

    pub fn dump(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn is_bool(t: &str) -> bool {
    t == "true" || t == "false"
}

fn is_usize(t: &str) -> bool {
    !t.is_empty() && t.chars().all(|c| c.is_ascii_digit())
}

fn is_i64(t: &str) -> bool {
    t.parse::<i64>().is_ok()
}

/// `S[<coset>,<symbol>]`: brackets balanced, exactly one comma, no inner
/// brackets, nonempty halves.
fn is_label(t: &str) -> bool {
    let Some(inner) = t.strip_prefix("S[").and_then(|r| r.strip_suffix(']')) else {
        return false;
    };
    let Some((coset, sym)) = inner.split_once(',') else {
        return false;
    };
    !coset.is_empty()
        && !sym.is_empty()
        && !inner.contains(['[', ']'])
        && inner.matches(',').count() == 1
}

/// A kernel-word letter: a label with an optional `^-1` suffix.
fn is_letter(t: &str) -> bool {
    is_label(t.strip_suffix("^-1").unwrap_or(t))
}

/// An element or symbol token: nonempty printable ASCII without spaces.
fn is_name(t: &str) -> bool {
    !t.is_empty() && t.chars().all(|c| c.is_ascii_graphic())
}

/// A word over kernel generators: the single token `1`, or letters.
fn check_word(tokens: &[&str]) -> Result<(), String> {
    if tokens == ["1"] {
        return Ok(());
    }
    if tokens.is_empty() {
        return Err("empty word (the empty word is written `1`)".into());
    }
    for t in tokens {
        if !is_letter(t) {
            return Err(format!("bad word letter {t:?}"));
        }
    }
    Ok(())
}

fn check_line(no: usize, tokens: &[&str]) -> Result<(), String> {
    let fail = |msg: String| Err(format!("line {no}: {msg}"));
    let (key, rest) = tokens.split_first().expect("caller skips empty lines");
    let arity = |n: usize, pred: fn(&str) -> bool, what: &str| -> Result<(), String> {
        if rest.len() != n {
            return fail(format!("`{key}` takes {n} token(s), got {}", rest.len()));
        }
        for t in rest {
            if !pred(t) {
                return fail(format!("`{key}`: {t:?} is not {what}"));
            }
        }
        Ok(())
    };
    let list = |pred: fn(&str) -> bool, what: &str| -> Result<(), String> {
        for t in rest {
            if !pred(t) {
                return fail(format!("`{key}`: {t:?} is not {what}"));
            }
        }
        Ok(())
    };
    match *key {
        "stage" => {
            let stages = [
                "validate", "genus", "present", "simplify", "homology", "harvey", "orbit",
                "adapted",
            ];
            if rest.len() != 1 || !stages.contains(&rest[0]) {
                return fail(format!("`stage` takes one of {stages:?}"));
            }
            Ok(())
        }
        "group-order" | "base-genus" | "genus" | "generators" | "relations" | "dimension"
        | "cap" | "count" => arity(1, is_usize, "an unsigned integer"),
        "periods" => list(is_usize, "an unsigned integer"),
        "long-relation" | "surjective" | "valid" | "representation" | "block" | "adapted"
        | "truncated" | "linked" => arity(1, is_bool, "a boolean"),
        "period-order" => {
            if rest.len() != 2 || !is_usize(rest[0]) || !is_bool(rest[1]) {
                return fail("`period-order` takes an index and a boolean".into());
            }
            Ok(())
        }
        "generator" => arity(1, is_label, "a generator label"),
        "coset" => {
            if rest.is_empty() || !is_name(rest[0]) {
                return fail("`coset` takes a name then a word".into());
            }
            let word = &rest[1..];
            if word == ["1"] {
                return Ok(());
            }
            for t in word {
                let base = t.strip_suffix("^-1").unwrap_or(t);
                if !is_name(base) || base.contains(['[', ']', ',']) {
                    return fail(format!("`coset`: bad symbol {t:?}"));
                }
            }
            Ok(())
        }
        "relation" => {
            let (head, word) = match rest {
                ["long-conjugate", name, ":", w @ ..] if is_name(name) => (true, w),
                ["elliptic-power", j, name, ":", w @ ..] if is_usize(j) && is_name(name) => {
                    (true, w)
                }
                ["trivial-generator", label, ":", w @ ..] if is_label(label) => (true, w),
                _ => (false, &[][..]),
            };
            if !head {
                return fail("`relation` head is malformed".into());
            }
            check_word(word).or_else(&fail)
        }
        "eliminated" => match rest {
            [label, ":", w @ ..] if is_label(label) => check_word(w).or_else(&fail),
            _ => fail("`eliminated` takes a label, `:`, and a word".into()),
        },
        "basis" => list(is_label, "a generator label"),
        "matrix" | "witness" => {
            if rest.len() != 1 || !(is_name(rest[0])) {
                return fail(format!("`{key}` takes one name"));
            }
            Ok(())
        }
        "row" => list(is_i64, "an integer"),
        "class" => {
            let cases = [
                "free-orbit",
                "cyclic-coset-sum",
                "power-sweep-image",
                "stabilized-basis",
                "unclassified",
            ];
            if rest.len() != 2 || !is_label(rest[0]) || !cases.contains(&rest[1]) {
                return fail(format!("`class` takes a label and one of {cases:?}"));
            }
            Ok(())
        }
        "program" | "ops" => arity(1, is_name, "a move program"),
        "a" | "b" | "xi" | "vector" => list(is_name, "an element name"),
        other => fail(format!("unknown key {other:?}")),
    }
}

/// Parse and validate a machine document. Whitespace between tokens is
/// normalized to single spaces, so `dump` of the result is the canonical
/// form; on canonical input, `dump(parse(text)) == text`.
pub fn parse(text: &str) -> Result<Doc, String> {
    let mut doc = Doc::new();
    for (i, raw) in text.lines().enumerate() {
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(format!("line {}: empty line", i + 1));
        }
        check_line(i + 1, &tokens)?;
        doc.push(tokens[0], tokens[1..].iter().copied());
    }
    Ok(doc)
}
