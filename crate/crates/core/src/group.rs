//! Finite groups as fully tabulated multiplication tables.
//!
//! Elements are opaque indices `0..n` with index `0` always the identity.
//! Constructors exist for cyclic groups, symmetric groups (with a documented,
//! deterministic element enumeration), and arbitrary user-supplied tables
//! (validated exhaustively against the group axioms).

use thiserror::Error;

/// A group element: an index into the multiplication table. Index 0 is the
/// identity.
pub type Elem = usize;

/// Largest group order accepted by the table-building constructors. Keeps the
/// full `n x n` table (and the exhaustive axiom checks in [`FiniteGroup::from_table`])
/// cheap.
pub const MAX_ORDER: usize = 4096;

/// Largest degree accepted by [`FiniteGroup::symmetric`]: `6! = 720` elements.
pub const MAX_SYMMETRIC_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order must be at least 1")]
    InvalidOrder,
    #[error("group order {n} exceeds the tabulation cap {cap}")]
    OrderTooLarge { n: usize, cap: usize },
    #[error("symmetric degree {degree} exceeds the tabulation cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("multiplication table is not square: row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("table entry at ({row},{col}) is {value}, outside [0,{n})")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("index 0 is not a two-sided identity (first failure against element {at})")]
    NoIdentityAtZero { at: usize },
    #[error("element {element} has no inverse")]
    NonInvertible { element: usize },
    #[error("row {row} of the table is not a permutation of the element set")]
    RowNotPermutation { row: usize },
    #[error("column {col} of the table is not a permutation of the element set")]
    ColumnNotPermutation { col: usize },
    #[error("associativity fails at the triple ({i},{j},{k})")]
    NonAssociative { i: usize, j: usize, k: usize },
    #[error("names list has length {got}, expected {expected}")]
    NamesWrongLength { got: usize, expected: usize },
    #[error("element name {index} is empty, duplicated, or contains a forbidden character: {name:?}")]
    BadName { index: usize, name: String },
}

/// A finite group given by its complete multiplication table.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<Vec<Elem>>,
    inverse: Vec<Elem>,
    element_order: Vec<usize>,
    names: Vec<String>,
}

/// All permutations of `{0, ..., degree-1}` in the enumeration used by
/// [`FiniteGroup::symmetric`]: the identity first, then the remaining
/// permutations sorted by (element order ascending, largest moved point
/// ascending, one-line form lexicographically ascending).
///
/// Permutations compose as functions: `(s . t)(p) = s(t(p))`.
pub fn symmetric_permutations(degree: usize) -> Vec<Vec<usize>> {
    fn all_perms(degree: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for k in 0..degree {
            let mut next = Vec::new();
            for p in &out {
                for pos in 0..=k {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }
    fn perm_order(p: &[usize]) -> usize {
        let id: Vec<usize> = (0..p.len()).collect();
        let mut q = p.to_vec();
        let mut ord = 1;
        while q != id {
            q = q.iter().map(|&i| p[i]).collect();
            ord += 1;
        }
        ord
    }
    fn largest_moved(p: &[usize]) -> usize {
        p.iter()
            .enumerate()
            .filter(|(i, &v)| *i != v)
            .map(|(i, _)| i)
            .max()
            .unwrap_or(0)
    }

    let mut perms = all_perms(degree);
    perms.sort_by_key(|p| {
        let is_id = p.iter().enumerate().all(|(i, &v)| i == v);
        (
            if is_id { 0 } else { 1 },
            perm_order(p),
            largest_moved(p),
            p.clone(),
        )
    });
    perms
}

impl FiniteGroup {
    /// The cyclic group of order `n`, with `i * j = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidOrder);
        }
        if n > MAX_ORDER {
            return Err(GroupError::OrderTooLarge { n, cap: MAX_ORDER });
        }
        let table: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Ok(Self::from_parts(table))
    }

    /// The symmetric group on `degree` points, under the enumeration of
    /// [`symmetric_permutations`]. Element 0 is the identity and the product
    /// of elements `i` and `j` is the composition `perms[i] . perms[j]`
    /// (apply `j` first).
    pub fn symmetric(degree: usize) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::InvalidOrder);
        }
        if degree > MAX_SYMMETRIC_DEGREE {
            return Err(GroupError::DegreeTooLarge {
                degree,
                cap: MAX_SYMMETRIC_DEGREE,
            });
        }
        let perms = symmetric_permutations(degree);
        let n = perms.len();
        let mut index_of = std::collections::HashMap::new();
        for (i, p) in perms.iter().enumerate() {
            index_of.insert(p.clone(), i);
        }
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let composed: Vec<usize> = (0..degree).map(|p| perms[i][perms[j][p]]).collect();
                table[i][j] = index_of[&composed];
            }
        }
        Ok(Self::from_parts(table))
    }

    /// The dihedral group of order `2m` (symmetries of a regular `m`-gon).
    ///
    /// Elements `0..m` are the rotations `r^0..r^(m-1)`; elements `m..2m` are
    /// the reflections `s*r^0..s*r^(m-1)`. Products follow `s*r^k*s = r^(-k)`,
    /// i.e. `(s^e1 r^k1)(s^e2 r^k2) = s^(e1 xor e2) r^(k1*(-1)^e2 + k2)`.
    pub fn dihedral(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::InvalidOrder);
        }
        let n = 2 * m;
        if n > MAX_ORDER {
            return Err(GroupError::OrderTooLarge { n, cap: MAX_ORDER });
        }
        let idx = |e: usize, k: usize| e * m + k % m;
        let mut table = vec![vec![0; n]; n];
        for e1 in 0..2 {
            for k1 in 0..m {
                for e2 in 0..2 {
                    for k2 in 0..m {
                        let k = if e2 == 0 { k1 + k2 } else { (m - k1) + k2 };
                        table[idx(e1, k1)][idx(e2, k2)] = idx(e1 ^ e2, k % m);
                    }
                }
            }
        }
        Ok(Self::from_parts(table))
    }

    /// Build a group from an explicit table, checking every group axiom
    /// exhaustively: square shape, entries in range, identity at index 0,
    /// invertibility, cancellation (Latin square), and associativity.
    pub fn from_table(table: Vec<Vec<Elem>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidOrder);
        }
        if n > MAX_ORDER {
            return Err(GroupError::OrderTooLarge { n, cap: MAX_ORDER });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            for (col, &v) in r.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange {
                        row,
                        col,
                        value: v,
                        n,
                    });
                }
            }
        }
        for (i, row) in table.iter().enumerate() {
            if table[0][i] != i || row[0] != i {
                return Err(GroupError::NoIdentityAtZero { at: i });
            }
        }
        for (i, row) in table.iter().enumerate() {
            if !row.contains(&0) {
                return Err(GroupError::NonInvertible { element: i });
            }
        }
        for (row, r) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &v in r {
                if seen[v] {
                    return Err(GroupError::RowNotPermutation { row });
                }
                seen[v] = true;
            }
        }
        for col in 0..n {
            let mut seen = vec![false; n];
            for row in table.iter() {
                let v = row[col];
                if seen[v] {
                    return Err(GroupError::ColumnNotPermutation { col });
                }
                seen[v] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(GroupError::NonAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(Self::from_parts(table))
    }

    /// Internal: derive inverses, orders, and default names from a table that
    /// is already known to satisfy the group axioms.
    fn from_parts(table: Vec<Vec<Elem>>) -> Self {
        let n = table.len();
        let inverse: Vec<Elem> = (0..n)
            .map(|i| (0..n).find(|&j| table[i][j] == 0).expect("group axiom: inverse exists"))
            .collect();
        let element_order: Vec<usize> = (0..n)
            .map(|i| {
                let mut acc = i;
                let mut ord = 1;
                while acc != 0 {
                    acc = table[acc][i];
                    ord += 1;
                }
                ord
            })
            .collect();
        let names = (0..n).map(|i| i.to_string()).collect();
        FiniteGroup {
            n,
            table,
            inverse,
            element_order,
            names,
        }
    }

    /// Replace the display names of the elements. Names must be nonempty,
    /// pairwise distinct, and free of whitespace and the characters
    /// `, [ ]` (they appear inside `S[name,symbol]` labels in machine output).
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.n {
            return Err(GroupError::NamesWrongLength {
                got: names.len(),
                expected: self.n,
            });
        }
        for (index, name) in names.iter().enumerate() {
            let ok = !name.is_empty()
                && name
                    .chars()
                    .all(|c| c.is_ascii_graphic() && !matches!(c, ',' | '[' | ']'));
            let dup = names[..index].contains(name);
            if !ok || dup {
                return Err(GroupError::BadName {
                    index,
                    name: name.clone(),
                });
            }
        }
        self.names = names;
        Ok(self)
    }

    /// Group order.
    pub fn order(&self) -> usize {
        self.n
    }

    /// The identity element (always index 0).
    pub fn identity(&self) -> Elem {
        0
    }

    /// Iterate over all elements.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.n
    }

    /// Product of `a` and `b`, in that order.
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a][b]
    }

    /// Inverse of `a`.
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    /// Order of the element `a` (least `k >= 1` with `a^k = identity`).
    pub fn elem_order(&self, a: Elem) -> usize {
        self.element_order[a]
    }

    /// Display name of `a`.
    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    /// Look up an element by its display name.
    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|s| s == name)
    }

    /// True iff every pair of elements commutes.
    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// True iff `g` is a power of `h`.
    pub fn in_cyclic_span(&self, g: Elem, h: Elem) -> bool {
        let mut acc = 0;
        loop {
            if acc == g {
                return true;
            }
            acc = self.mul(acc, h);
            if acc == 0 {
                return g == 0;
            }
        }
    }

    /// The subgroup generated by `gens`, as a sorted element list (breadth-first
    /// closure over the multiplication table).
    pub fn closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut in_set = vec![false; self.n];
        in_set[0] = true;
        let mut queue: std::collections::VecDeque<Elem> = std::collections::VecDeque::new();
        queue.push_back(0);
        for &g in gens {
            if !in_set[g] {
                in_set[g] = true;
                queue.push_back(g);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &g in gens {
                let v = self.mul(u, g);
                if !in_set[v] {
                    in_set[v] = true;
                    queue.push_back(v);
                }
            }
        }
        (0..self.n).filter(|&i| in_set[i]).collect()
    }
}
