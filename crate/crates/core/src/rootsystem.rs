//! Root data for simple, simply-connected groups of types A through G.
//!
//! Weights are integer vectors in the basis of fundamental weights. In that
//! basis the simple reflection `s_i` acts by `w -> w - w[i] * alpha_i`, where
//! `alpha_i` is the i-th row of the Cartan matrix, so almost everything here
//! reduces to integer vector arithmetic. Root-basis coordinates, heights and
//! the invariant form are exact rationals, kept internally as integers scaled
//! by the common denominator of the inverse Cartan matrix.
//!
//! Cartan matrices follow the Bourbaki numbering:
//!
//! * `A_n`: chain `1 - 2 - ... - n`.
//! * `B_n`: chain, `alpha_n` short.
//! * `C_n`: chain, `alpha_n` long.
//! * `D_n` (n >= 4): chain `1 - ... - (n-2)`, with `n-1` and `n` both attached to `n-2`.
//! * `E_6, E_7, E_8`: chain `1 - 3 - 4 - 5 - ...`, with `2` attached to `4`.
//! * `F_4`: chain, `alpha_1, alpha_2` long.
//! * `G_2`: `alpha_1` short, `alpha_2` long.
//!
//! The matrix entry in row `i`, column `j` is `<alpha_i, alpha_j^vee>`.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Cartan-Killing type letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E => "E",
            CartanType::F => "F",
            CartanType::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "C" | "c" => Ok(CartanType::C),
            "D" | "d" => Ok(CartanType::D),
            "E" | "e" => Ok(CartanType::E),
            "F" | "f" => Ok(CartanType::F),
            "G" | "g" => Ok(CartanType::G),
            other => Err(Error::Format(format!("unknown type letter {other:?}"))),
        }
    }
}

/// An element of the weight lattice, in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The weight `c * (1, ..., 1)`, i.e. `c * rho`.
    pub fn constant(rank: usize, c: i64) -> Self {
        Weight(vec![c; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Every coordinate lies in `[0, q - 1]`.
    pub fn is_restricted(&self, q: u64) -> bool {
        self.0.iter().all(|&c| c >= 0 && (c as u64) < q)
    }

    /// Splits `self = low + q * high` with `low` q-restricted.
    pub fn split_restricted(&self, q: i64) -> (Weight, Weight) {
        let (high, low): (Vec<i64>, Vec<i64>) =
            self.0.iter().map(|&c| c.div_mod_floor(&q)).unzip();
        (Weight(low), Weight(high))
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|&c| c * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses comma-separated integers, e.g. `"1,0,-2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.is_empty() {
            return Err(Error::Format("empty weight".into()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Format(format!("bad weight coordinate {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, rhs: &'a Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, rhs: &'a Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scale(self)
    }
}

/// Cartan data of a simple, simply-connected group.
///
/// Immutable once built; every query is a pure function.
#[derive(Clone, Debug)]
pub struct RootSystem {
    type_letter: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<Weight>,
    inverse_cartan: Vec<Vec<Ratio<i64>>>,
    /// Common denominator `d` of `inverse_cartan`.
    denom: i64,
    /// `d * inverse_cartan`, integral.
    scaled_inverse: Vec<Vec<i64>>,
    /// `d * (omega_i, omega_j)` for the form with short roots of squared length 2.
    scaled_gram: Vec<Vec<i64>>,
    /// Squared lengths of the simple roots.
    root_lengths: Vec<i64>,
    positive_roots: Vec<Weight>,
    rho: Weight,
    highest_root: Weight,
    alpha0: Weight,
    coxeter_number: u64,
    /// Images of the fundamental weights under `w0`.
    w0_images: Vec<Weight>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.type_letter == other.type_letter && self.rank == other.rank
    }
}

impl Eq for RootSystem {}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.type_letter, self.rank)
    }
}

/// Dynkin diagram edges (0-based) and squared simple root lengths.
fn diagram(letter: CartanType, rank: usize) -> Result<(Vec<(usize, usize)>, Vec<i64>)> {
    let invalid = |reason| Error::InvalidType {
        letter: letter.to_string(),
        rank,
        reason,
    };
    let chain = |n: usize| (1..n).map(|i| (i - 1, i)).collect::<Vec<_>>();
    match letter {
        CartanType::A => {
            if rank < 1 {
                return Err(invalid("type A needs rank >= 1"));
            }
            Ok((chain(rank), vec![2; rank]))
        }
        CartanType::B => {
            if rank < 2 {
                return Err(invalid("type B needs rank >= 2"));
            }
            let mut lengths = vec![4; rank];
            lengths[rank - 1] = 2;
            Ok((chain(rank), lengths))
        }
        CartanType::C => {
            if rank < 2 {
                return Err(invalid("type C needs rank >= 2"));
            }
            let mut lengths = vec![2; rank];
            lengths[rank - 1] = 4;
            Ok((chain(rank), lengths))
        }
        CartanType::D => {
            if rank < 4 {
                return Err(invalid("type D needs rank >= 4 (use A3 for D3)"));
            }
            let mut edges = chain(rank - 1);
            edges.push((rank - 3, rank - 1));
            Ok((edges, vec![2; rank]))
        }
        CartanType::E => {
            if !(6..=8).contains(&rank) {
                return Err(invalid("type E needs rank 6, 7 or 8"));
            }
            let mut edges = vec![(0, 2), (1, 3)];
            edges.extend((2..rank - 1).map(|i| (i, i + 1)));
            Ok((edges, vec![2; rank]))
        }
        CartanType::F => {
            if rank != 4 {
                return Err(invalid("type F needs rank 4"));
            }
            Ok((chain(4), vec![4, 4, 2, 2]))
        }
        CartanType::G => {
            if rank != 2 {
                return Err(invalid("type G needs rank 2"));
            }
            Ok((chain(2), vec![2, 6]))
        }
    }
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Ratio<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.extend((0..n).map(|j| Ratio::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != Ratio::from_integer(0))
            .expect("Cartan matrices are nonsingular");
        a.swap(col, pivot);
        let inv = Ratio::from_integer(1) / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != Ratio::from_integer(0) {
                    for c in 0..2 * n {
                        let v = a[col][c];
                        a[r][c] -= f * v;
                    }
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

impl RootSystem {
    /// Builds the root system of type `letter` and the given rank.
    pub fn build(letter: CartanType, rank: usize) -> Result<RootSystem> {
        let (edges, root_lengths) = diagram(letter, rank)?;

        let mut form = vec![vec![0i64; rank]; rank];
        for (i, row) in form.iter_mut().enumerate() {
            row[i] = root_lengths[i];
        }
        for &(i, j) in &edges {
            let v = -root_lengths[i].max(root_lengths[j]) / 2;
            form[i][j] = v;
            form[j][i] = v;
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * form[i][j] / root_lengths[j]).collect())
            .collect();

        let inverse_cartan = invert(&cartan);
        let denom = inverse_cartan
            .iter()
            .flatten()
            .fold(1i64, |acc, r| acc.lcm(r.denom()));
        let scaled_inverse: Vec<Vec<i64>> = inverse_cartan
            .iter()
            .map(|row| row.iter().map(|r| (r * denom).to_integer()).collect())
            .collect();
        let scaled_gram: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| scaled_inverse[i][j] * root_lengths[j] / 2)
                    .collect()
            })
            .collect();

        let simple_roots: Vec<Weight> = cartan.iter().map(|row| Weight(row.clone())).collect();
        let rho = Weight::constant(rank, 1);

        let mut rs = RootSystem {
            type_letter: letter,
            rank,
            cartan,
            simple_roots,
            inverse_cartan,
            denom,
            scaled_inverse,
            scaled_gram,
            root_lengths,
            positive_roots: Vec::new(),
            rho,
            highest_root: Weight::zero(rank),
            alpha0: Weight::zero(rank),
            coxeter_number: 0,
            w0_images: Vec::new(),
        };

        // Every root is W-conjugate to a simple root.
        let mut roots: HashSet<Weight> = HashSet::new();
        for alpha in &rs.simple_roots {
            roots.extend(rs.weyl_orbit(alpha));
        }
        let mut positive: Vec<Weight> = roots
            .into_iter()
            .filter(|b| rs.scaled_root_coords(b).iter().all(|&c| c >= 0))
            .collect();
        positive.sort_by(|a, b| rs.canonical_cmp(a, b));
        rs.positive_roots = positive;

        let highest = rs.positive_roots[0].clone();
        let short_len = *rs.root_lengths.iter().min().unwrap();
        let alpha0 = rs
            .positive_roots
            .iter()
            .find(|b| rs.norm_squared(b) == Ratio::from_integer(short_len))
            .cloned()
            .expect("some positive root is short");
        let h = rs.height(&highest);
        debug_assert!(h.is_integer());
        rs.coxeter_number = (h.to_integer() + 1) as u64;
        rs.highest_root = highest;
        rs.alpha0 = alpha0;

        // Reduce rho to the antidominant chamber; the reflections used spell w0.
        let mut word = Vec::new();
        let mut w = rs.rho.clone();
        while let Some(i) = w.coords().iter().position(|&c| c > 0) {
            w = rs.reflect(&w, i);
            word.push(i);
        }
        rs.w0_images = (0..rank)
            .map(|j| {
                let mut e = Weight::zero(rank);
                e.0[j] = 1;
                word.iter().fold(e, |acc, &i| rs.reflect(&acc, i))
            })
            .collect();

        Ok(rs)
    }

    pub fn type_letter(&self) -> CartanType {
        self.type_letter
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn inverse_cartan(&self) -> &[Vec<Ratio<i64>>] {
        &self.inverse_cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    /// Positive roots, in canonical order (highest root first).
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn highest_root(&self) -> &Weight {
        &self.highest_root
    }

    /// The maximal short root.
    pub fn alpha0(&self) -> &Weight {
        &self.alpha0
    }

    pub fn coxeter_number(&self) -> u64 {
        self.coxeter_number
    }

    /// Squared length of the i-th simple root (short roots have length 2).
    pub fn simple_root_length(&self, i: usize) -> i64 {
        self.root_lengths[i]
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                weight: w.clone(),
                found: w.rank(),
                expected: self.rank,
            });
        }
        Ok(())
    }

    /// The denominator by which `scaled_root_coords` and `scaled_height` are inflated.
    pub fn scale_denominator(&self) -> i64 {
        self.denom
    }

    /// Simple-root coordinates multiplied by `scale_denominator()`.
    pub fn scaled_root_coords(&self, w: &Weight) -> Vec<i64> {
        (0..self.rank)
            .map(|i| {
                w.0.iter()
                    .zip(&self.scaled_inverse)
                    .map(|(c, row)| c * row[i])
                    .sum()
            })
            .collect()
    }

    /// Coordinates of `w` in the basis of simple roots.
    pub fn root_coords(&self, w: &Weight) -> Vec<Ratio<i64>> {
        self.scaled_root_coords(w)
            .into_iter()
            .map(|c| Ratio::new(c, self.denom))
            .collect()
    }

    /// Height times `scale_denominator()`; integral and linear in `w`.
    pub fn scaled_height(&self, w: &Weight) -> i64 {
        self.scaled_root_coords(w).iter().sum()
    }

    pub fn height(&self, w: &Weight) -> Ratio<i64> {
        Ratio::new(self.scaled_height(w), self.denom)
    }

    /// Is `w` a nonnegative integer combination of simple roots?
    pub fn in_positive_root_cone(&self, w: &Weight) -> bool {
        self.scaled_root_coords(w)
            .iter()
            .all(|&c| c >= 0 && c % self.denom == 0)
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.scaled_root_coords(w)
            .iter()
            .all(|&c| c % self.denom == 0)
    }

    /// `a <= b` in the dominance order.
    pub fn dominance_leq(&self, a: &Weight, b: &Weight) -> bool {
        self.in_positive_root_cone(&(b - a))
    }

    /// Total order refining dominance: larger height first, then larger coordinates.
    pub fn canonical_cmp(&self, a: &Weight, b: &Weight) -> Ordering {
        self.scaled_height(b)
            .cmp(&self.scaled_height(a))
            .then_with(|| b.cmp(a))
    }

    /// `scale_denominator() * (a, b)`.
    pub fn scaled_inner(&self, a: &Weight, b: &Weight) -> i64 {
        let mut s = 0;
        for (i, ai) in a.0.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                s += ai * self.scaled_gram[i][j] * bj;
            }
        }
        s
    }

    /// The W-invariant form, normalized so short roots have squared length 2.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Ratio<i64> {
        Ratio::new(self.scaled_inner(a, b), self.denom)
    }

    pub fn norm_squared(&self, w: &Weight) -> Ratio<i64> {
        self.inner(w, w)
    }

    /// `<w, beta^vee>` for a root `beta`.
    pub fn coroot_pairing(&self, w: &Weight, beta: &Weight) -> i64 {
        let num = 2 * self.scaled_inner(w, beta);
        let den = self.scaled_inner(beta, beta);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// The simple reflection `s_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        if c == 0 {
            return w.clone();
        }
        Weight(
            w.0.iter()
                .zip(&self.cartan[i])
                .map(|(x, a)| x - c * a)
                .collect(),
        )
    }

    pub fn apply_w0(&self, w: &Weight) -> Weight {
        let mut out = Weight::zero(self.rank);
        for (c, img) in w.0.iter().zip(&self.w0_images) {
            if *c != 0 {
                for (o, x) in out.0.iter_mut().zip(&img.0) {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// The unique dominant weight in the W-orbit of `w`.
    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        let mut w = w.clone();
        while let Some(i) = w.0.iter().position(|&c| c < 0) {
            w = self.reflect(&w, i);
        }
        w
    }

    /// The full W-orbit of `w`, by closure under simple reflections.
    pub fn weyl_orbit(&self, w: &Weight) -> HashSet<Weight> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                if v.0[i] == 0 {
                    continue;
                }
                let u = self.reflect(&v, i);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Dominant weights `mu <= lambda`, for dominant `lambda`.
    ///
    /// Any two comparable dominant weights are joined by a chain of dominant
    /// weights differing by positive roots, so a downward search suffices.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(v) = queue.pop_front() {
            for beta in &self.positive_roots {
                let u = &v - beta;
                if u.is_dominant() && seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort_by(|a, b| self.canonical_cmp(a, b));
        out
    }
}
