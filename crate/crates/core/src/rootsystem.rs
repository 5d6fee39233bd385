//! Finite irreducible root systems in Bourbaki numbering.
//!
//! Roots are stored in simple-root coordinates, weights in fundamental-weight
//! coordinates. The Cartan matrix is `cartan[i][j] = ⟨α_j, α_i^∨⟩`, so the
//! fundamental-weight coordinates of a root `Σ k_j α_j` are `cartan · k`.
//! Short roots have squared length 2; in simply-laced types every root is
//! short. Node indices in this API are 0-based; text forms are 1-based.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("no root system of type {kind}{rank}")]
    Inadmissible { kind: Kind, rank: usize },
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("node set {0:?} is not a subset of the diagram nodes")]
    BadNodeSet(Vec<usize>),
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("weight has {got} coordinates, rank is {rank}")]
    RankMismatch { got: usize, rank: usize },
    #[error("malformed weight `{0}`")]
    ParseWeight(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Kind {
    pub const ALL: [Kind; 7] = [Kind::A, Kind::B, Kind::C, Kind::D, Kind::E, Kind::F, Kind::G];

    pub fn admits(self, rank: usize) -> bool {
        match self {
            Kind::A => rank >= 1,
            Kind::B => rank >= 2,
            Kind::C => rank >= 3,
            Kind::D => rank >= 4,
            Kind::E => (6..=8).contains(&rank),
            Kind::F => rank == 4,
            Kind::G => rank == 2,
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Kind::A | Kind::D | Kind::E)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Kind {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Kind::A),
            "B" => Ok(Kind::B),
            "C" => Ok(Kind::C),
            "D" => Ok(Kind::D),
            "E" => Ok(Kind::E),
            "F" => Ok(Kind::F),
            "G" => Ok(Kind::G),
            _ => Err(RootSystemError::UnknownType(s.to_string())),
        }
    }
}

/// Parse `E8`, `a4`, `B12`. A bare letter yields `None` for the rank.
pub fn parse_type(text: &str) -> Result<(Kind, Option<usize>), RootSystemError> {
    let text = text.trim();
    let mut chars = text.chars();
    let letter = chars
        .next()
        .ok_or_else(|| RootSystemError::UnknownType(text.to_string()))?;
    let kind: Kind = letter.to_string().parse()?;
    let rest = chars.as_str();
    if rest.is_empty() {
        return Ok((kind, None));
    }
    let rank = rest
        .parse::<usize>()
        .map_err(|_| RootSystemError::UnknownType(text.to_string()))?;
    Ok((kind, Some(rank)))
}

/// An integral weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    /// `ω_i` (0-based node).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self(v)
    }

    pub fn rho(rank: usize) -> Self {
        Self(vec![1; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Nodes with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    /// Parse `0,0,1`, `w8`, `w1+w4`, `2w3` or `0` for a given rank.
    pub fn parse(text: &str, rank: usize) -> Result<Self, RootSystemError> {
        let bad = || RootSystemError::ParseWeight(text.to_string());
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        if t.contains(',') || t.chars().all(|c| c.is_ascii_digit() || c == '-') && rank == 1 {
            let coords = t
                .split(',')
                .map(|s| s.parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            if coords.len() != rank {
                return Err(RootSystemError::RankMismatch {
                    got: coords.len(),
                    rank,
                });
            }
            return Ok(Self(coords));
        }
        if t == "0" {
            return Ok(Self::zero(rank));
        }
        let mut coords = vec![0i64; rank];
        for term in t.split('+') {
            let (coef, node) = term.split_once(['w', 'W']).ok_or_else(bad)?;
            let coef = if coef.is_empty() {
                1
            } else {
                coef.parse::<i64>().map_err(|_| bad())?
            };
            let node: usize = node.parse().map_err(|_| bad())?;
            if node == 0 || node > rank {
                return Err(bad());
            }
            coords[node - 1] += coef;
        }
        Ok(Self(coords))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "w{}", i + 1)?;
        }
        Ok(())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        Weight(rhs.0.iter().map(|c| self * c).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Root {
    coords: Vec<i64>,
    length_class: LengthClass,
    /// `⟨β, β⟩ / 2`.
    symm: i64,
}

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn length_class(&self) -> LengthClass {
        self.length_class
    }

    pub fn is_short(&self) -> bool {
        self.length_class == LengthClass::Short
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn symmetrizer(&self) -> i64 {
        self.symm
    }
}

/// Diagram edges (0-based) and per-node symmetrizers for a Bourbaki-numbered
/// Dynkin diagram.
fn diagram(kind: Kind, n: usize) -> (Vec<(usize, usize)>, Vec<i64>) {
    let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match kind {
        Kind::A => (chain(n), vec![1; n]),
        Kind::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            (chain(n), d)
        }
        Kind::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            (chain(n), d)
        }
        Kind::D => {
            let mut edges = chain(n - 1);
            edges.push((n - 3, n - 1));
            (edges, vec![1; n])
        }
        Kind::E => {
            let mut edges = vec![(0, 2), (1, 3)];
            edges.extend((2..n - 1).map(|i| (i, i + 1)));
            (edges, vec![1; n])
        }
        Kind::F => (chain(4), vec![2, 2, 1, 1]),
        Kind::G => (chain(2), vec![1, 3]),
    }
}

/// Cartan matrix and symmetrizers without enumerating roots.
pub fn cartan_matrix(kind: Kind, rank: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>), RootSystemError> {
    if !kind.admits(rank) {
        return Err(RootSystemError::Inadmissible { kind, rank });
    }
    let (edges, d) = diagram(kind, rank);
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in edges {
        // ⟨α_i, α_j⟩ = -max(d_i, d_j) for joined nodes
        let b = -d[i].max(d[j]);
        a[i][j] = b / d[i];
        a[j][i] = b / d[j];
    }
    Ok((a, d))
}

/// Number of positive roots from the classical table.
pub fn classical_positive_root_count(kind: Kind, n: usize) -> usize {
    match kind {
        Kind::A => n * (n + 1) / 2,
        Kind::B | Kind::C => n * n,
        Kind::D => n * (n - 1),
        Kind::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Kind::F => 24,
        Kind::G => 6,
    }
}

/// Minuscule fundamental weights (0-based nodes) as read off the Dynkin tables.
pub fn minuscule_table(kind: Kind, n: usize) -> Vec<usize> {
    match kind {
        Kind::A => (0..n).collect(),
        Kind::B => vec![n - 1],
        Kind::C => vec![0],
        Kind::D => vec![0, n - 2, n - 1],
        Kind::E => match n {
            6 => vec![0, 5],
            7 => vec![6],
            _ => vec![],
        },
        Kind::F | Kind::G => vec![],
    }
}

fn invert_rational(a: &[Vec<i64>]) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = a.len();
    let mut m: Vec<Vec<Ratio<i64>>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= factor * *p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Immutable data of one irreducible root system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    kind: Kind,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symm: Vec<i64>,
    inv_cartan: Vec<Vec<Ratio<i64>>>,
    positive_roots: Vec<Root>,
    alpha0_root: Root,
    alpha0: Weight,
    coxeter: i64,
    minuscule: Vec<Weight>,
}

/// Per-type memo table.
pub(crate) type TypeCache<T> = Mutex<HashMap<(Kind, usize), Arc<T>>>;

fn system_cache() -> &'static TypeCache<RootSystem> {
    static CACHE: OnceLock<TypeCache<RootSystem>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl RootSystem {
    /// Build a root system, enumerating positive roots by closure from the
    /// simple roots.
    pub fn build(kind: Kind, rank: usize) -> Result<Self, RootSystemError> {
        let (cartan, symm) = cartan_matrix(kind, rank)?;
        let inv_cartan = invert_rational(&cartan)
            .ok_or_else(|| RootSystemError::Internal(format!("{kind}{rank}: singular Cartan matrix")))?;
        let roots = enumerate_positive_roots(&cartan);
        let expected = classical_positive_root_count(kind, rank);
        if roots.len() != expected {
            return Err(RootSystemError::Internal(format!(
                "{kind}{rank}: closure found {} positive roots, expected {expected}",
                roots.len()
            )));
        }
        let bilinear = |x: &[i64], y: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..rank {
                for j in 0..rank {
                    s += x[i] * symm[i] * cartan[i][j] * y[j];
                }
            }
            s
        };
        let positive_roots: Vec<Root> = roots
            .into_iter()
            .map(|coords| {
                let symm = bilinear(&coords, &coords) / 2;
                let length_class = if symm == 1 {
                    LengthClass::Short
                } else {
                    LengthClass::Long
                };
                Root {
                    coords,
                    length_class,
                    symm,
                }
            })
            .collect();
        let alpha0_root = positive_roots
            .iter()
            .filter(|r| r.is_short())
            .max_by_key(|r| r.height())
            .cloned()
            .ok_or_else(|| RootSystemError::Internal("no short roots".into()))?;
        let mut rs = Self {
            kind,
            rank,
            cartan,
            symm,
            inv_cartan,
            positive_roots,
            alpha0: Weight::zero(rank),
            alpha0_root,
            coxeter: 0,
            minuscule: Vec::new(),
        };
        rs.alpha0 = rs.root_to_weight(&rs.alpha0_root);
        rs.coxeter = rs.pairing(&Weight::rho(rank), &rs.alpha0_root) + 1;
        if !rs.alpha0.is_dominant() {
            return Err(RootSystemError::Internal(format!(
                "{kind}{rank}: highest short root {} is not dominant",
                rs.alpha0
            )));
        }

        let table = minuscule_table(kind, rank);
        if rank <= 8 {
            let computed: Vec<usize> = (0..rank)
                .filter(|&i| rs.is_dominance_minimal(&Weight::fundamental(rank, i)))
                .collect();
            if computed != table {
                return Err(RootSystemError::Internal(format!(
                    "{kind}{rank}: minuscule table {table:?} disagrees with computed {computed:?}"
                )));
            }
        }
        rs.minuscule = std::iter::once(Weight::zero(rank))
            .chain(table.into_iter().map(|i| Weight::fundamental(rank, i)))
            .collect();
        Ok(rs)
    }

    /// Shared, memoized instance.
    pub fn get(kind: Kind, rank: usize) -> Result<Arc<Self>, RootSystemError> {
        if let Some(rs) = system_cache().lock().expect("cache poisoned").get(&(kind, rank)) {
            return Ok(Arc::clone(rs));
        }
        let rs = Arc::new(Self::build(kind, rank)?);
        match system_cache().lock().expect("cache poisoned").entry((kind, rank)) {
            Entry::Occupied(o) => Ok(Arc::clone(o.get())),
            Entry::Vacant(v) => Ok(Arc::clone(v.insert(rs))),
        }
    }

    /// Every admissible `(kind, rank)` with `rank <= max_rank`, in a fixed order.
    pub fn all_types(max_rank: usize) -> Vec<(Kind, usize)> {
        Kind::ALL
            .iter()
            .flat_map(|&k| (1..=max_rank).filter(move |&n| k.admits(n)).map(move |n| (k, n)))
            .collect()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `d_i = ⟨α_i, α_i⟩ / 2`.
    pub fn symmetrizers(&self) -> &[i64] {
        &self.symm
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn short_positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.positive_roots.iter().filter(|r| r.is_short())
    }

    /// Simple short roots, as 0-based node indices in Bourbaki order.
    pub fn short_simple_nodes(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.symm[i] == 1).collect()
    }

    /// Highest short root in the fundamental-weight basis.
    pub fn highest_short_root(&self) -> &Weight {
        &self.alpha0
    }

    pub fn highest_short_root_as_root(&self) -> &Root {
        &self.alpha0_root
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter
    }

    pub fn minuscule_weights(&self) -> &[Weight] {
        &self.minuscule
    }

    pub fn is_minuscule(&self, lam: &Weight) -> bool {
        self.minuscule.contains(lam)
    }

    /// Fundamental-weight coordinates of a root.
    pub fn root_to_weight(&self, root: &Root) -> Weight {
        self.simple_coords_to_weight(&root.coords)
    }

    fn simple_coords_to_weight(&self, k: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * k[j]).sum())
                .collect(),
        )
    }

    fn check_rank(&self, lam: &Weight) -> Result<(), RootSystemError> {
        if lam.rank() != self.rank {
            return Err(RootSystemError::RankMismatch {
                got: lam.rank(),
                rank: self.rank,
            });
        }
        Ok(())
    }

    pub fn check_dominant(&self, lam: &Weight) -> Result<(), RootSystemError> {
        self.check_rank(lam)?;
        if !lam.is_dominant() {
            return Err(RootSystemError::NotDominant(lam.clone()));
        }
        Ok(())
    }

    /// `⟨λ, β^∨⟩`, with `β^∨ = Σ (k_j d_j / d_β) α_j^∨`.
    pub fn pairing(&self, lam: &Weight, beta: &Root) -> i64 {
        let num: i64 = (0..self.rank)
            .map(|j| beta.coords[j] * self.symm[j] * lam.0[j])
            .sum();
        debug_assert_eq!(num % beta.symm, 0);
        num / beta.symm
    }

    /// Simple-root coordinates of a weight, as rationals.
    pub fn weight_to_simple_coords(&self, lam: &Weight) -> Vec<Ratio<i64>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.inv_cartan[i][j] * lam.0[j])
                    .fold(Ratio::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// `μ ≤ λ`: `λ - μ` is a nonnegative integer combination of simple roots.
    pub fn dominance_leq(&self, mu: &Weight, lam: &Weight) -> bool {
        self.weight_to_simple_coords(&(lam - mu))
            .iter()
            .all(|c| c.is_integer() && *c >= Ratio::zero())
    }

    /// A dominant weight is minimal among dominant weights iff no positive
    /// root can be subtracted while staying dominant (every cover in the
    /// dominance order of dominant weights is by a positive root).
    fn is_dominance_minimal(&self, lam: &Weight) -> bool {
        self.positive_roots.iter().all(|beta| {
            let mu = lam - &self.root_to_weight(beta);
            !(mu.is_dominant() && self.dominance_leq(&mu, lam))
        })
    }

    /// The affine reflection `s_{α₀,ℓ}` under the dot action:
    /// `λ - (⟨λ+ρ, α₀^∨⟩ - ℓ) α₀`.
    pub fn dot_reflect_alpha0(&self, ell: i64, lam: &Weight) -> Weight {
        let shifted = lam + &Weight::rho(self.rank);
        let k = self.pairing(&shifted, &self.alpha0_root) - ell;
        lam - &(k * &self.alpha0)
    }

    /// `⟨λ+ρ, α₀^∨⟩ ≤ ℓ`.
    pub fn in_bottom_alcove_closure(&self, ell: i64, lam: &Weight) -> Result<bool, RootSystemError> {
        self.check_dominant(lam)?;
        let shifted = lam + &Weight::rho(self.rank);
        Ok(self.pairing(&shifted, &self.alpha0_root) <= ell)
    }

    /// Dimension of the irreducible module of highest weight `λ` in
    /// characteristic zero (Weyl's dimension formula).
    pub fn weyl_dimension(&self, lam: &Weight) -> Result<BigUint, RootSystemError> {
        self.check_dominant(lam)?;
        let shifted = lam + &Weight::rho(self.rank);
        let rho = Weight::rho(self.rank);
        let (mut num, mut den) = (BigUint::one(), BigUint::one());
        for beta in &self.positive_roots {
            num *= self.pairing(&shifted, beta) as u64;
            den *= self.pairing(&rho, beta) as u64;
        }
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(RootSystemError::Internal("Weyl dimension is not integral".into()));
        }
        Ok(q)
    }

    /// Diagram neighbours of node `i`.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&j| j != i && self.cartan[i][j] != 0)
    }

    pub fn is_connected(&self, nodes: &BTreeSet<usize>) -> bool {
        let Some(&start) = nodes.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if nodes.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == nodes.len()
    }

    /// Nodes on the diagram path from `a` to `b`, both included. Dynkin
    /// diagrams are trees so the path is the smallest connected subdiagram
    /// containing both.
    pub fn path_between(&self, a: usize, b: usize) -> BTreeSet<usize> {
        let mut prev = vec![usize::MAX; self.rank];
        prev[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut path = BTreeSet::from([b]);
        let mut v = b;
        while v != a {
            v = prev[v];
            path.insert(v);
        }
        path
    }

    /// Decompose the subdiagram on `nodes` into irreducible components, each
    /// re-typed with its own Bourbaki numbering.
    pub fn levi_subsystem(&self, nodes: &BTreeSet<usize>) -> Result<Levi, RootSystemError> {
        if nodes.iter().any(|&i| i >= self.rank) {
            return Err(RootSystemError::BadNodeSet(nodes.iter().copied().collect()));
        }
        let mut remaining = nodes.clone();
        let mut components = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut comp = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if nodes.contains(&w) && comp.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            for v in &comp {
                remaining.remove(v);
            }
            components.push(self.identify_component(&comp)?);
        }
        Ok(Levi { components })
    }

    fn identify_component(&self, comp: &BTreeSet<usize>) -> Result<LeviComponent, RootSystemError> {
        let nodes: Vec<usize> = comp.iter().copied().collect();
        let r = nodes.len();
        for kind in Kind::ALL {
            let Ok((target, _)) = cartan_matrix(kind, r) else {
                continue;
            };
            if let Some(map) = match_cartan(&target, &self.cartan, &nodes) {
                let system = RootSystem::get(kind, r)?;
                return Ok(LeviComponent { system, nodes: map });
            }
        }
        Err(RootSystemError::Internal(format!(
            "{}: subdiagram on nodes {:?} matches no Dynkin type",
            self.name(),
            nodes.iter().map(|i| i + 1).collect::<Vec<_>>()
        )))
    }
}

/// Find `σ` with `target[k][l] == source[σ(k)][σ(l)]`, `σ(k) ∈ nodes`; the
/// first match in lexicographic order.
fn match_cartan(target: &[Vec<i64>], source: &[Vec<i64>], nodes: &[usize]) -> Option<Vec<usize>> {
    fn extend(
        target: &[Vec<i64>],
        source: &[Vec<i64>],
        nodes: &[usize],
        assigned: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let k = assigned.len();
        if k == target.len() {
            return true;
        }
        for (slot, &cand) in nodes.iter().enumerate() {
            if used[slot] {
                continue;
            }
            let fits = assigned.iter().enumerate().all(|(l, &src)| {
                target[k][l] == source[cand][src] && target[l][k] == source[src][cand]
            });
            if fits {
                assigned.push(cand);
                used[slot] = true;
                if extend(target, source, nodes, assigned, used) {
                    return true;
                }
                assigned.pop();
                used[slot] = false;
            }
        }
        false
    }
    let mut assigned = Vec::with_capacity(nodes.len());
    let mut used = vec![false; nodes.len()];
    extend(target, source, nodes, &mut assigned, &mut used).then_some(assigned)
}

/// Positive roots in simple-root coordinates, by height.
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut roots = simple.clone();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut idx = 0;
    while idx < roots.len() {
        let beta = roots[idx].clone();
        idx += 1;
        for i in 0..n {
            if beta == simple[i] {
                continue;
            }
            // α_i-string through β: β - pα_i, ..., β + qα_i with p - q = ⟨β, α_i^∨⟩
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if known.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let pair: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
            if p - pair > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if known.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
    }
    roots
}

/// One irreducible component of a Levi subdiagram.
#[derive(Debug, Clone)]
pub struct LeviComponent {
    pub system: Arc<RootSystem>,
    /// `nodes[k]` is the ambient node playing the role of node `k` of `system`.
    pub nodes: Vec<usize>,
}

impl LeviComponent {
    /// Keep the coordinates `c_i` with `i` in this component, relabeled.
    pub fn restrict(&self, lam: &Weight) -> Weight {
        Weight(self.nodes.iter().map(|&i| lam.0[i]).collect())
    }
}

#[derive(Debug, Clone)]
pub struct Levi {
    pub components: Vec<LeviComponent>,
}

impl Levi {
    pub fn restrict(&self, lam: &Weight) -> Vec<Weight> {
        self.components.iter().map(|c| c.restrict(lam)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(kind: Kind, n: usize) -> Arc<RootSystem> {
        RootSystem::get(kind, n).unwrap()
    }

    fn w(rank: usize, text: &str) -> Weight {
        Weight::parse(text, rank).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(rs(Kind::A, 2).positive_roots().len(), 3);
        assert_eq!(rs(Kind::G, 2).positive_roots().len(), 6);
        assert_eq!(rs(Kind::E, 8).positive_roots().len(), 120);
    }

    #[test]
    fn inadmissible_types_rejected() {
        for (k, n) in [(Kind::A, 0), (Kind::B, 1), (Kind::C, 2), (Kind::D, 3), (Kind::E, 5), (Kind::E, 9), (Kind::F, 3), (Kind::G, 3)] {
            assert_eq!(
                RootSystem::build(k, n).unwrap_err(),
                RootSystemError::Inadmissible { kind: k, rank: n }
            );
        }
    }

    #[test]
    fn symmetrized_cartan_is_symmetric() {
        for (k, n) in RootSystem::all_types(10) {
            let r = rs(k, n);
            let (a, d) = (r.cartan(), r.symmetrizers());
            for i in 0..n {
                assert_eq!(a[i][i], 2);
                for j in 0..n {
                    assert_eq!(d[i] * a[i][j], d[j] * a[j][i], "{k}{n}");
                    if i != j {
                        assert!((-3..=0).contains(&a[i][j]));
                    }
                }
            }
        }
    }

    #[test]
    fn highest_short_roots() {
        for n in 1..7 {
            let expected = if n == 1 { w(1, "2w1") } else { w(n, &format!("w1+w{n}")) };
            assert_eq!(rs(Kind::A, n).highest_short_root(), &expected);
        }
        assert_eq!(rs(Kind::B, 5).highest_short_root(), &w(5, "w1"));
        assert_eq!(rs(Kind::C, 5).highest_short_root(), &w(5, "w2"));
        assert_eq!(rs(Kind::D, 6).highest_short_root(), &w(6, "w2"));
        assert_eq!(rs(Kind::E, 6).highest_short_root(), &w(6, "w2"));
        assert_eq!(rs(Kind::E, 7).highest_short_root(), &w(7, "w1"));
        assert_eq!(rs(Kind::E, 8).highest_short_root(), &w(8, "w8"));
        assert_eq!(rs(Kind::F, 4).highest_short_root(), &w(4, "w4"));
        assert_eq!(rs(Kind::G, 2).highest_short_root(), &w(2, "w1"));
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(rs(Kind::A, 5).coxeter_number(), 6);
        assert_eq!(rs(Kind::B, 4).coxeter_number(), 8);
        assert_eq!(rs(Kind::E, 8).coxeter_number(), 30);
        assert_eq!(rs(Kind::G, 2).coxeter_number(), 6);
    }

    #[test]
    fn minuscule_examples() {
        let d5: Vec<String> = rs(Kind::D, 5).minuscule_weights().iter().map(|m| m.to_string()).collect();
        assert_eq!(d5, ["0", "w1", "w4", "w5"]);
        assert_eq!(rs(Kind::E, 8).minuscule_weights(), &[Weight::zero(8)]);
        assert_eq!(rs(Kind::A, 3).minuscule_weights().len(), 4);
    }

    #[test]
    fn pairing_examples() {
        let r = rs(Kind::F, 4);
        for i in 0..4 {
            for j in 0..4 {
                let simple = r.positive_roots().iter().find(|b| b.coords()[j] == 1 && b.height() == 1).unwrap();
                assert_eq!(r.pairing(&Weight::fundamental(4, i), simple), (i == j) as i64);
            }
        }
        assert_eq!(r.pairing(&Weight::rho(4), r.highest_short_root_as_root()), r.coxeter_number() - 1);
        assert_eq!(r.pairing(&Weight::zero(4), &r.positive_roots()[7]), 0);
    }

    #[test]
    fn dominance_examples() {
        let r = rs(Kind::A, 4);
        let lam = w(4, "w2+w3");
        assert!(r.dominance_leq(&lam, &lam));
        assert!(r.dominance_leq(&Weight::zero(4), r.highest_short_root()));
        assert!(!r.dominance_leq(&w(4, "w1"), &w(4, "w4")));
        assert!(!r.dominance_leq(r.highest_short_root(), &Weight::zero(4)));
    }

    #[test]
    fn dot_reflection_examples() {
        for n in 2..8 {
            let r = rs(Kind::A, n);
            assert_eq!(&r.dot_reflect_alpha0(n as i64 + 1, &Weight::zero(n)), r.highest_short_root());
            let b = rs(Kind::B, n);
            let wn = Weight::fundamental(n, n - 1);
            assert_eq!(b.dot_reflect_alpha0(2 * n as i64 + 1, &wn), w(n, &format!("w1+w{n}")));
        }
        // a weight on the reflecting wall is fixed
        let r = rs(Kind::C, 4);
        let lam = w(4, "w1+w3");
        let ell = r.pairing(&(&lam + &Weight::rho(4)), r.highest_short_root_as_root());
        assert_eq!(r.dot_reflect_alpha0(ell, &lam), lam);
    }

    #[test]
    fn alcove_examples() {
        let r = rs(Kind::D, 5);
        let h = r.coxeter_number();
        assert!(r.in_bottom_alcove_closure(h, &Weight::zero(5)).unwrap());
        // ⟨ρ, α₀^∨⟩ = h - 1 sits on the upper wall at ℓ = h - 1
        assert!(r.in_bottom_alcove_closure(h - 1, &Weight::zero(5)).unwrap());
        assert!(!r.in_bottom_alcove_closure(h - 2, &Weight::zero(5)).unwrap());
        let b = rs(Kind::B, 4);
        assert!(b.in_bottom_alcove_closure(9, &w(4, "w4")).unwrap());
        assert!(matches!(
            b.in_bottom_alcove_closure(9, &w(4, "0,-1,0,0")),
            Err(RootSystemError::NotDominant(_))
        ));
    }

    #[test]
    fn dimensions() {
        let g2 = rs(Kind::G, 2);
        assert_eq!(g2.weyl_dimension(&w(2, "w2")).unwrap(), BigUint::from(14u32));
        assert_eq!(g2.weyl_dimension(&w(2, "w1")).unwrap(), BigUint::from(7u32));
        assert_eq!(g2.weyl_dimension(&Weight::zero(2)).unwrap(), BigUint::one());
        let a1 = rs(Kind::A, 1);
        for m in 0..30 {
            assert_eq!(a1.weyl_dimension(&Weight::new(vec![m])).unwrap(), BigUint::from(m as u64 + 1));
        }
        assert_eq!(rs(Kind::E, 8).weyl_dimension(&w(8, "w8")).unwrap(), BigUint::from(248u32));
        assert!(g2.weyl_dimension(&w(2, "-1,0")).is_err());
    }

    #[test]
    fn levi_examples() {
        let e6 = rs(Kind::E, 6);
        let j: BTreeSet<usize> = (1..6).collect();
        let levi = e6.levi_subsystem(&j).unwrap();
        assert_eq!(levi.components.len(), 1);
        assert_eq!(levi.components[0].system.name(), "D5");

        for n in 3..8 {
            let b = rs(Kind::B, n);
            for i in 1..n {
                let j: BTreeSet<usize> = (i..n).collect();
                let levi = b.levi_subsystem(&j).unwrap();
                let sys = &levi.components[0].system;
                assert_eq!((sys.kind(), sys.rank()), (if n - i == 1 { Kind::A } else { Kind::B }, n - i));
            }
        }
        let e8 = rs(Kind::E, 8);
        for i in 0..8 {
            let levi = e8.levi_subsystem(&BTreeSet::from([i])).unwrap();
            assert_eq!(levi.components[0].system.name(), "A1");
        }
        assert!(matches!(
            e8.levi_subsystem(&BTreeSet::from([8])),
            Err(RootSystemError::BadNodeSet(_))
        ));
    }

    #[test]
    fn c_type_tail_is_b2() {
        let c4 = rs(Kind::C, 4);
        let levi = c4.levi_subsystem(&BTreeSet::from([2, 3])).unwrap();
        let comp = &levi.components[0];
        assert_eq!(comp.system.name(), "B2");
        // the long node of C4 becomes node 1 of B2
        assert_eq!(comp.nodes, vec![3, 2]);
        assert_eq!(comp.restrict(&w(4, "w4")), w(2, "w1"));
    }

    #[test]
    fn disconnected_levi() {
        let d6 = rs(Kind::D, 6);
        let levi = d6.levi_subsystem(&BTreeSet::from([0, 1, 3, 4, 5])).unwrap();
        let names: Vec<String> = levi.components.iter().map(|c| c.system.name()).collect();
        assert_eq!(names, ["A2", "A3"]);
    }

    #[test]
    fn weight_text_forms() {
        assert_eq!(w(8, "w8"), w(8, "0,0,0,0,0,0,0,1"));
        assert_eq!(w(4, "w1 + 2w3"), Weight::new(vec![1, 0, 2, 0]));
        assert_eq!(w(4, "w1+2w3").to_string(), "w1+2w3");
        assert_eq!(w(3, "0"), Weight::zero(3));
        assert_eq!(w(1, "5"), Weight::new(vec![5]));
        assert!(Weight::parse("w9", 8).is_err());
        assert!(Weight::parse("x1", 8).is_err());
        assert!(matches!(Weight::parse("1,2", 3), Err(RootSystemError::RankMismatch { .. })));
        assert_eq!(parse_type("E8").unwrap(), (Kind::E, Some(8)));
        assert_eq!(parse_type("b").unwrap(), (Kind::B, None));
        assert!(parse_type("Q3").is_err());
    }
}
