//! Finitely generated abelian groups `Z^r ⊕ Z/n_1 ⊕ … ⊕ Z/n_k` with
//! `n_1 | n_2 | … | n_k`, their elements, homomorphisms and kernels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{AlgError, Result};

pub type IntMatrix = Vec<Vec<i64>>;

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal with
/// `d_1 | d_2 | …` (zeros last). `u_inv · d · v_inv = m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len))).map(|i| self.d[i][i]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, r)| x.checked_mul(r[j]).expect("integer overflow")).sum())
                .collect()
        })
        .collect()
}

struct Work {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.m.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: i64) {
        for mat in [&mut self.m, &mut self.u] {
            let rj = mat[j].clone();
            for (x, y) in mat[i].iter_mut().zip(rj) {
                *x += k * y;
            }
        }
        for row in self.u_inv.iter_mut() {
            row[j] -= k * row[i];
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: i64) {
        for mat in [&mut self.m, &mut self.v] {
            for row in mat.iter_mut() {
                row[i] += k * row[j];
            }
        }
        let ri = self.v_inv[i].clone();
        for (x, y) in self.v_inv[j].iter_mut().zip(ri) {
            *x -= k * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.m[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i];
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut w = Work { m: m.clone(), u: identity(rows), u_inv: identity(rows), v: identity(cols), v_inv: identity(cols) };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if w.m[i][j] != 0 && best.is_none_or(|(a, b)| w.m[i][j].abs() < w.m[a][b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = w.m[i][t].div_euclid(p);
                if q != 0 {
                    w.add_row(i, t, -q);
                }
                if w.m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = w.m[t][j].div_euclid(p);
                if q != 0 {
                    w.add_col(j, t, -q);
                }
                if w.m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| w.m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        w.add_row(t, i, 1);
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..rows {
                if w.m[i][t] != 0 && w.m[i][t].abs() < w.m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if w.m[t][j] != 0 && w.m[t][j].abs() < w.m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                w.swap_rows(t, best.0);
            }
            if best.1 != t {
                w.swap_cols(t, best.1);
            }
        }
        if w.m[t][t] < 0 {
            w.negate_row(t);
        }
        t += 1;
    }
    Snf { u: w.u, d: w.m, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv }
}

/// Basis (as rows) of the lattice spanned by the rows of `gens` in `Z^n`.
pub fn lattice_basis(gens: &IntMatrix, n: usize) -> IntMatrix {
    if gens.is_empty() {
        return Vec::new();
    }
    let s = smith_normal_form(gens);
    // rows(gens) = rows(u_inv · d · v_inv): the nonzero rows of d · v_inv
    let diag = s.diagonal();
    let mut out = Vec::new();
    for (i, &di) in diag.iter().enumerate() {
        if di != 0 {
            out.push((0..n).map(|j| di * s.v_inv[i][j]).collect());
        }
    }
    out
}

/// Integer `c` with `c · basis = r`.
pub fn solve_left(basis: &IntMatrix, r: &[i64]) -> Option<Vec<i64>> {
    solve_left_any(basis, r)
}

/// Rows `x` with `x · m = 0`, as a lattice basis.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let s = smith_normal_form(m);
    let r = s.rank();
    (r..rows).map(|i| s.u[i].clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<i64>,
}

/// Coordinates: free part first, then one coordinate per torsion factor,
/// reduced into `[0, n_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<i64>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cardinality {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => write!(f, "infinite"),
        }
    }
}

impl FgAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Result<Self> {
        if torsion.iter().any(|&n| n < 2) {
            return Err(AlgError::InvalidInput(format!("torsion orders must be at least 2: {torsion:?}")));
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(AlgError::InvalidInput(format!("torsion orders must form a divisibility chain: {torsion:?}")));
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn free(r: usize) -> Self {
        FgAbGroup { free_rank: r, torsion: vec![] }
    }

    pub fn cyclic(n: i64) -> Self {
        match n {
            0 => Self::free(1),
            1 | -1 => Self::trivial(),
            _ => FgAbGroup { free_rank: 0, torsion: vec![n.abs()] },
        }
    }

    /// Any direct sum of cyclic groups `Z/n_i` (`n_i = 0` for `Z`), in
    /// canonical form, with the matrix sending summand coordinates to
    /// canonical coordinates.
    pub fn from_cyclic_factors(orders: &[i64]) -> (Self, IntMatrix) {
        let rels: IntMatrix = orders
            .iter()
            .enumerate()
            .map(|(i, &n)| (0..orders.len()).map(|j| if i == j { n } else { 0 }).collect())
            .collect();
        Self::from_presentation(orders.len(), &rels)
    }

    /// `Z^ngens / ⟨relations⟩` in canonical form, with the matrix sending
    /// presentation coordinates to canonical coordinates (`x ↦ x · m`).
    pub fn from_presentation(ngens: usize, relations: &IntMatrix) -> (Self, IntMatrix) {
        let rels: IntMatrix = if relations.is_empty() { vec![vec![0; ngens]] } else { relations.clone() };
        let s = smith_normal_form(&rels);
        let diag = s.diagonal();
        let d = |i: usize| diag.get(i).copied().unwrap_or(0);
        let free: Vec<usize> = (0..ngens).filter(|&i| d(i) == 0).collect();
        let tors: Vec<usize> = (0..ngens).filter(|&i| d(i) > 1).collect();
        let g = FgAbGroup { free_rank: free.len(), torsion: tors.iter().map(|&i| d(i)).collect() };
        let picks: Vec<usize> = free.iter().chain(&tors).copied().collect();
        let m: IntMatrix = (0..ngens).map(|r| picks.iter().map(|&c| s.v[r][c]).collect()).collect();
        (g, m)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of the `i`-th canonical generator (`0` for infinite order).
    pub fn generator_order(&self, i: usize) -> i64 {
        if i < self.free_rank {
            0
        } else {
            self.torsion[i - self.free_rank]
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn order(&self) -> Cardinality {
        if self.free_rank > 0 {
            Cardinality::Infinite
        } else {
            Cardinality::Finite(self.torsion.iter().map(|&n| n as u64).product())
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Canonical relation rows `n_j e_j`.
    pub fn relation_rows(&self) -> IntMatrix {
        let n = self.ngens();
        self.torsion
            .iter()
            .enumerate()
            .map(|(j, &t)| {
                let mut r = vec![0; n];
                r[self.free_rank + j] = t;
                r
            })
            .collect()
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.ngens() {
            return Err(AlgError::InvalidInput(format!(
                "element {coords:?} has {} coordinates, group {self} needs {}",
                coords.len(),
                self.ngens()
            )));
        }
        Ok(self.reduce(coords))
    }

    fn reduce(&self, coords: &[i64]) -> GroupElement {
        let mut c = coords.to_vec();
        for (j, &t) in self.torsion.iter().enumerate() {
            c[self.free_rank + j] = c[self.free_rank + j].rem_euclid(t);
        }
        GroupElement(c)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.ngens()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.ngens()];
        c[i] = 1;
        self.reduce(&c)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.ngens()).map(|i| self.generator(i)).collect()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let c: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(&c)
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let c: Vec<i64> = a.0.iter().map(|x| -x).collect();
        self.reduce(&c)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        let c: Vec<i64> = a.0.iter().map(|x| k * x).collect();
        self.reduce(&c)
    }

    pub fn is_zero(&self, a: &GroupElement) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    pub fn element_order(&self, a: &GroupElement) -> Cardinality {
        if a.0[..self.free_rank].iter().any(|&x| x != 0) {
            return Cardinality::Infinite;
        }
        let mut l: i64 = 1;
        for (j, &t) in self.torsion.iter().enumerate() {
            let x = a.0[self.free_rank + j];
            let o = t / gcd(x, t);
            l = l / gcd(l, o) * o;
        }
        Cardinality::Finite(l as u64)
    }

    /// Every element, for finite groups.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &t in &self.torsion {
            out = out.into_iter().flat_map(|v: Vec<i64>| (0..t).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        Some(out.into_iter().map(GroupElement).collect())
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> (FgAbGroup, IntMatrix) {
        let orders: Vec<i64> = (0..self.ngens())
            .map(|i| self.generator_order(i))
            .chain((0..other.ngens()).map(|i| other.generator_order(i)))
            .collect();
        Self::from_cyclic_factors(&orders)
    }

    /// Membership oracle for the subgroup generated by `elems`.
    pub fn subgroup_generated(&self, elems: &[GroupElement]) -> Subgroup {
        let mut rows: IntMatrix = elems.iter().map(|e| e.0.clone()).collect();
        rows.extend(self.relation_rows());
        Subgroup { group: self.clone(), basis: lattice_basis(&rows, self.ngens()) }
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Text form `Z^r + Z/n1 + Z/n2`, or `0`.
impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|n| format!("Z/{n}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Parses a sum of `Z`, `Z^r`, `Z/n` and `0` summands.
pub fn parse_cyclic_factors(s: &str) -> Result<Vec<i64>> {
    let mut orders = Vec::new();
    for part in s.split('+') {
        let p: String = part.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || AlgError::InvalidInput(format!("cannot parse group summand `{p}`"));
        if p == "0" {
            continue;
        }
        if p == "Z" {
            orders.push(0);
        } else if let Some(r) = p.strip_prefix("Z^") {
            let r: usize = r.parse().map_err(|_| bad())?;
            orders.extend(std::iter::repeat_n(0, r));
        } else if let Some(n) = p.strip_prefix("Z/") {
            let n: i64 = n.parse().map_err(|_| bad())?;
            if n < 1 {
                return Err(bad());
            }
            orders.push(n);
        } else {
            return Err(bad());
        }
    }
    Ok(orders)
}

impl FromStr for FgAbGroup {
    type Err = AlgError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::from_cyclic_factors(&parse_cyclic_factors(s)?).0)
    }
}

/// Subgroup given by a lattice basis of its preimage in `Z^ngens`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: FgAbGroup,
    basis: IntMatrix,
}

impl Subgroup {
    pub fn contains(&self, e: &GroupElement) -> bool {
        solve_left(&self.basis, &e.0).is_some()
    }

    /// Coefficients expressing `e` through the basis, if it is a member.
    pub fn witness(&self, e: &GroupElement) -> Option<Vec<i64>> {
        solve_left(&self.basis, &e.0)
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn is_everything(&self) -> bool {
        self.group.generators().iter().all(|g| self.contains(g))
    }
}

/// Homomorphism `x ↦ x · matrix` in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.len() != source.ngens() || matrix.iter().any(|r| r.len() != target.ngens()) {
            return Err(AlgError::InvalidInput(format!(
                "matrix shape does not match {} generators of {source} and {} of {target}",
                source.ngens(),
                target.ngens()
            )));
        }
        let matrix: IntMatrix = matrix.iter().map(|r| target.reduce(r).0).collect();
        for (j, &t) in source.torsion.iter().enumerate() {
            let img = GroupElement(matrix[source.free_rank + j].clone());
            if !target.is_zero(&target.scale(t, &img)) {
                return Err(AlgError::IllDefinedMap(format!(
                    "generator of order {t} is sent to {img}, whose order does not divide {t}"
                )));
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, e: &GroupElement) -> GroupElement {
        let row = matmul(&vec![e.0.clone()], &self.matrix).remove(0);
        self.target.reduce(&row)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        GroupHom::new(self.source.clone(), other.target.clone(), matmul(&self.matrix, &other.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.source.generators().iter().all(|g| self.target.is_zero(&self.apply(g)))
    }

    pub fn is_surjective(&self) -> bool {
        let imgs: Vec<GroupElement> = self.source.generators().iter().map(|g| self.apply(g)).collect();
        self.target.subgroup_generated(&imgs).is_everything()
    }

    /// Kernel in canonical form with its inclusion into the source.
    pub fn kernel(&self) -> (FgAbGroup, GroupHom) {
        let a = self.source.ngens();
        let mut stacked = self.matrix.clone();
        stacked.extend(self.target.relation_rows());
        let lk = left_kernel(&stacked);
        let mut gens: IntMatrix = lk.iter().map(|r| r[..a].to_vec()).collect();
        gens.extend(self.source.relation_rows());
        let basis = lattice_basis(&gens, a);
        let rel_coords: IntMatrix = self
            .source
            .relation_rows()
            .iter()
            .map(|r| solve_left(&basis, r).expect("source relations lie in the kernel lattice"))
            .collect();
        let (k, to_canon) = FgAbGroup::from_presentation(basis.len(), &rel_coords);
        let canon_to_pres = section(&to_canon, &k, basis.len());
        let incl: IntMatrix = canon_to_pres.iter().map(|c| matmul(&vec![c.clone()], &basis).remove(0)).collect();
        let inclusion = GroupHom::new(k.clone(), self.source.clone(), incl).expect("kernel inclusion");
        (k, inclusion)
    }
}

/// For each canonical generator, a presentation vector mapping onto it.
fn section(to_canon: &IntMatrix, k: &FgAbGroup, ngens: usize) -> IntMatrix {
    if k.ngens() == 0 {
        return Vec::new();
    }
    let mut rows: IntMatrix = to_canon.clone();
    rows.extend(k.relation_rows());
    let mut out = Vec::new();
    for i in 0..k.ngens() {
        let target = k.generator(i).0;
        let sol = solve_left_any(&rows, &target).expect("canonical map is surjective");
        out.push(sol[..ngens].to_vec());
    }
    out
}

/// Some integer `c` with `c · m = r`; rows of `m` need not be independent.
pub fn solve_left_any(m: &IntMatrix, r: &[i64]) -> Option<Vec<i64>> {
    if m.is_empty() {
        return r.iter().all(|&x| x == 0).then(Vec::new);
    }
    let s = smith_normal_form(m);
    let rv = matmul(&vec![r.to_vec()], &s.v).remove(0);
    let diag = s.diagonal();
    let mut y = vec![0i64; m.len()];
    for (j, &x) in rv.iter().enumerate() {
        let dj = diag.get(j).copied().unwrap_or(0);
        if dj == 0 {
            if x != 0 {
                return None;
            }
        } else {
            if x % dj != 0 {
                return None;
            }
            y[j] = x / dj;
        }
    }
    Some(matmul(&vec![y], &s.u).remove(0))
}
