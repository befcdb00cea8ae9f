//! The Farey triangulation and the primitive classes of F2 it indexes.
//!
//! Vertices of the triangulation are extended rationals p/q (slopes) with
//! gcd(|p|, q) = 1 and q ≥ 0; infinity is written 1/0 or -1/0, the sign
//! recording which half-plane an operation should read it in.  Two slopes
//! span an edge iff |ps - rq| = 1.  The base edge [e] joins 1/0 to 0/1, and
//! every other vertex is reached from it by repeated mediants:
//! (p+r)/(q+s) is the child of the edge from p/q to r/s.
//!
//! Walking away from the base edge induces, for each vertex, a *level*
//! (combinatorial distance from the base edge), a *Christoffel word* (the
//! positive primitive word with abelianization (p, q)), a *palindromic
//! representative* of the same conjugacy class, and a parity *tri-coloring*
//! that governs which of the two concatenation orders the palindrome
//! recursion uses.
//!
//! Conventions fixed here and used everywhere downstream:
//!
//! * The upper half-plane V⁺ carries the positive slopes, the lower V⁻ the
//!   negative ones.  A co-directed edge [x, y] is ordered with x nearer the
//!   1/0 end of its half-plane sweep (numerically larger in V⁺, more
//!   negative in V⁻).
//! * Child words concatenate in co-directed order: Ch[z] = Ch[x]·Ch[y].
//! * Seeds: on V⁺, Ch[1/0] = a and Ch[0/1] = b; on V⁻, Ch[-1/0] = a⁻¹ and
//!   Ch[0/1] = b.  The palindrome recursion uses the same seeds but swaps
//!   the concatenation order exactly on gray edges (see [`tricolor`]).

use crate::freegroup::Word;
use crate::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// An extended rational p/q in lowest terms with q ≥ 0.
/// Infinity is (±1, 0); the sign selects the half-plane convention for word
/// constructions (a for +, a⁻¹ for -), while both signs denote the same
/// Farey vertex (see [`Slope::canonical`]).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    /// Builds a slope, reducing to lowest terms and normalizing q ≥ 0.
    /// Errors on 0/0.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::BadSlope("0/0".into()));
        }
        let g = gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    /// Numerator (sign carries the half-plane for q = 0).
    pub fn p(&self) -> i64 {
        self.p
    }

    /// Denominator, always ≥ 0.
    pub fn q(&self) -> i64 {
        self.q
    }

    /// The vertex 1/0 = ∞ (positive representative).
    pub fn infinity() -> Self {
        Slope { p: 1, q: 0 }
    }

    /// The vertex 0/1.
    pub fn zero() -> Self {
        Slope { p: 0, q: 1 }
    }

    /// True for ±1/0.
    pub fn is_infinity(&self) -> bool {
        self.q == 0
    }

    /// Identifies the two representatives of ∞: returns 1/0 for ±1/0 and
    /// `self` otherwise.  Use this whenever slopes act as set keys.
    pub fn canonical(&self) -> Self {
        if self.q == 0 {
            Slope { p: 1, q: 0 }
        } else {
            *self
        }
    }

    /// The mirror -p/q (the V⁻ partner of a V⁺ slope and vice versa).
    pub fn mirror(&self) -> Self {
        Slope { p: -self.p, q: self.q }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Slope({}/{})", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (ps, qs) = s.split_once('/').ok_or_else(|| Error::BadSlope(s.into()))?;
        let p: i64 = ps.trim().parse().map_err(|_| Error::BadSlope(s.into()))?;
        let q: i64 = qs.trim().parse().map_err(|_| Error::BadSlope(s.into()))?;
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        if a == 0 {
            1
        } else {
            a
        }
    } else {
        gcd(b, a % b)
    }
}

/// Parity classes of ℙ¹(ℤ/2): Black is the class of 1/0 (the vertex [a]),
/// White the class of 0/1 (the vertex [b]), Gray the class of 1/1 (the base
/// edge).  A Farey edge inherits the color of the vertex opposite to it,
/// which is always the unique class missing from its two endpoints.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Color {
    /// Parity 1/0.
    Black,
    /// Parity 0/1.
    White,
    /// Parity 1/1.
    Gray,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Black => write!(f, "black"),
            Color::White => write!(f, "white"),
            Color::Gray => write!(f, "gray"),
        }
    }
}

fn parity_color(p: i64, q: i64) -> Color {
    match (p.rem_euclid(2), q.rem_euclid(2)) {
        (1, 0) => Color::Black,
        (0, 1) => Color::White,
        _ => Color::Gray,
    }
}

/// The parity class of a slope: Black for odd/even, White for even/odd,
/// Gray for odd/odd.  A class has a palindromic representative exactly when
/// its color differs from Gray (the color of the base edge).
pub fn tricolor(s: Slope) -> Color {
    parity_color(s.p, s.q)
}

// ---------------------------------------------------------------------------
// The descent walk.
//
// Every vertex other than 1/0 and 0/1 is found by a mediant walk from the
// base edge of its half-plane.  The walk runs on absolute values (the V⁻
// combinatorics mirror V⁺ exactly); seeds differ per half-plane.
// ---------------------------------------------------------------------------

/// Runs the mediant walk toward |p|/q, combining per-vertex states downward.
/// `combine(left_state, right_state, left_pair, right_pair)` produces the
/// state of the child of the co-directed edge (left, right); pairs are the
/// absolute-value integer pairs of the endpoints.
fn descend<S: Clone>(
    tp: i64,
    tq: i64,
    seed_l: S,
    seed_r: S,
    mut combine: impl FnMut(&S, &S, (i64, i64), (i64, i64)) -> S,
) -> S {
    debug_assert!(tp > 0 && tq > 0);
    let mut l = (1i64, 0i64);
    let mut r = (0i64, 1i64);
    let mut sl = seed_l;
    let mut sr = seed_r;
    loop {
        let m = (l.0 + r.0, l.1 + r.1);
        let sm = combine(&sl, &sr, l, r);
        if m == (tp, tq) {
            return sm;
        }
        // Is the target between the mediant and the steep end (value > m)?
        if tp * m.1 - m.0 * tq > 0 {
            r = m;
            sr = sm;
        } else {
            l = m;
            sl = sm;
        }
    }
}

/// Level of a slope: the number of triangles in a shortest gallery
/// connecting the base edge to the vertex.  The base vertices 1/0 and 0/1
/// have level 0; the child of a co-directed edge has level max(levels) + 1.
pub fn level(s: Slope) -> u32 {
    if s.q == 0 || s.p == 0 {
        return 0;
    }
    descend(s.p.abs(), s.q, 0u32, 0u32, |a, b, _, _| a.max(b) + 1)
}

/// The Christoffel word of a slope: the positive primitive word (in a, b on
/// V⁺; in a⁻¹, b on V⁻) with abelianization (p, q).  Children concatenate
/// co-directed: Ch[z] = Ch[x]·Ch[y].
pub fn christoffel(s: Slope) -> Word {
    if s.q == 0 {
        return if s.p > 0 { Word::gen_a() } else { Word::gen_a().inverse() };
    }
    if s.p == 0 {
        return Word::gen_b();
    }
    let seed_a = if s.p > 0 { Word::gen_a() } else { Word::gen_a().inverse() };
    descend(s.p.abs(), s.q, seed_a, Word::gen_b(), |a, b, _, _| a.concat(b))
}

/// Word length of the Christoffel word of a slope, computed in closed form:
/// positivity of Christoffel words gives |Ch(p/q)| = |p| + q.
pub fn fibonacci(s: Slope) -> u64 {
    s.p.unsigned_abs() + s.q as u64
}

/// The palindromic representative of a slope's class.  Same seeds as
/// [`christoffel`]; the recursion concatenates co-directed except across
/// gray edges, where the factors swap:
/// Pal[z] = Pal[y]·Pal[x] if the edge [x, y] is gray, else Pal[x]·Pal[y].
/// The result is an honest palindrome exactly when tricolor(s) ≠ Gray.
pub fn palindrome_rep(s: Slope) -> Word {
    if s.q == 0 {
        return if s.p > 0 { Word::gen_a() } else { Word::gen_a().inverse() };
    }
    if s.p == 0 {
        return Word::gen_b();
    }
    let seed_a = if s.p > 0 { Word::gen_a() } else { Word::gen_a().inverse() };
    descend(s.p.abs(), s.q, seed_a, Word::gen_b(), |a, b, l, r| {
        // The edge color is the third parity class, i.e. the mediant's.
        if parity_color(l.0 + r.0, l.1 + r.1) == Color::Gray {
            b.concat(a)
        } else {
            a.concat(b)
        }
    })
}

// ---------------------------------------------------------------------------
// Edges and the edge tree.
// ---------------------------------------------------------------------------

/// An edge of the Farey triangulation with a direction.  `co_directed` is
/// true when (from, to) runs the same way as the base edge sweep of its
/// half-plane (from the 1/0 end toward the 0/1 end).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FareyEdge {
    pub from: Slope,
    pub to: Slope,
    pub co_directed: bool,
}

impl FareyEdge {
    /// Validates |ps - rq| = 1 and records whether (from, to) is co-directed.
    pub fn new(from: Slope, to: Slope) -> Result<Self> {
        let det = from.p * to.q - to.p * from.q;
        if det.abs() != 1 {
            return Err(Error::NotAFareyEdge(format!("[{from}, {to}]")));
        }
        Ok(FareyEdge { from, to, co_directed: sweep_precedes(from, to) })
    }

    /// The two vertices completing a triangle with this edge, as
    /// (w, z) = (base-ward neighbor, far-side child): z is the mediant with
    /// the higher level, w the opposite neighbor.
    pub fn children(&self) -> (Slope, Slope) {
        let sum = Slope::new(self.from.p + self.to.p, self.from.q + self.to.q)
            .expect("mediant of a Farey edge is a valid slope");
        let diff = Slope::new(self.from.p - self.to.p, self.from.q - self.to.q)
            .expect("Farey difference of an edge is a valid slope");
        let (ls, ld) = (level(sum), level(diff));
        match ls.cmp(&ld) {
            Ordering::Greater => (diff, sum),
            Ordering::Less => (sum, diff),
            // Only the base edges [±1/0, 0/1] tie (both neighbors have
            // level 1); there the far-side child of either sweep is the
            // mediant of the endpoints.
            Ordering::Equal => (diff, sum),
        }
    }

    /// Level of the edge: max of the endpoint levels.
    pub fn level(&self) -> u32 {
        level(self.from).max(level(self.to))
    }
}

impl fmt::Display for FareyEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.from, self.to)
    }
}

/// True when `x` strictly precedes `y` in the sweep of its half-plane
/// (V⁺ from 1/0 down through positive values to 0/1; V⁻ from -1/0 up
/// through negative values to 0/1).
fn sweep_precedes(x: Slope, y: Slope) -> bool {
    // The two sweeps are disjoint except for their shared endpoints: ±1/0
    // heads its own half-plane (the sign of p distinguishes them) and 0/1
    // tails both.  Slopes of opposite sign are never comparable.
    if x.is_infinity() {
        return !y.is_infinity() && (y.p == 0 || (y.p > 0) == (x.p > 0));
    }
    if y.is_infinity() {
        return false;
    }
    if x.p == 0 {
        return false;
    }
    if y.p == 0 {
        return true;
    }
    if (x.p > 0) != (y.p > 0) {
        return false;
    }
    // Same-sign finite slopes: V⁺ sweeps by decreasing value, V⁻ by
    // increasing value.
    let cmp = x.p * y.q - y.p * x.q;
    if x.p > 0 {
        cmp > 0
    } else {
        cmp < 0
    }
}

/// A co-directed edge in the walk away from the base edge, carrying signed
/// integer pairs so mediants are plain componentwise sums.  `w` is the third
/// vertex of the triangle on the base-ward side; the far-side child is
/// x + y componentwise.
#[derive(Clone, Copy, Debug)]
pub(crate) struct EdgeRec {
    pub x: (i64, i64),
    pub y: (i64, i64),
    pub w: (i64, i64),
    /// Gallery level of the edge (max of endpoint levels).
    pub level: u32,
}

impl EdgeRec {
    /// The two base edges: V⁺ first (opposite vertex -1/1), then V⁻
    /// (opposite vertex 1/1).
    pub fn seeds() -> [EdgeRec; 2] {
        [
            EdgeRec { x: (1, 0), y: (0, 1), w: (-1, 1), level: 0 },
            EdgeRec { x: (-1, 0), y: (0, 1), w: (1, 1), level: 0 },
        ]
    }

    /// The far-side child vertex of this edge.
    pub fn child(&self) -> (i64, i64) {
        (self.x.0 + self.y.0, self.x.1 + self.y.1)
    }

    /// The two co-directed edges of the far-side triangle, each one level
    /// deeper: [x, z] (base-ward vertex y) and [z, y] (base-ward vertex x).
    pub fn expand(&self) -> (EdgeRec, EdgeRec) {
        let z = self.child();
        (
            EdgeRec { x: self.x, y: z, w: self.y, level: self.level + 1 },
            EdgeRec { x: z, y: self.y, w: self.x, level: self.level + 1 },
        )
    }

    /// Converts the stored pair into a public co-directed [`FareyEdge`].
    pub fn to_edge(&self) -> FareyEdge {
        let from = Slope::new(self.x.0, self.x.1).expect("edge endpoint is a valid slope");
        let to = Slope::new(self.y.0, self.y.1).expect("edge endpoint is a valid slope");
        let edge = FareyEdge { from, to, co_directed: true };
        // The stored base-ward vertex must agree with the one recovered
        // from the endpoints alone (up to the ±(p, q) representative).
        debug_assert_eq!(
            edge.children().0.canonical(),
            Slope::new(self.w.0, self.w.1).expect("base-ward vertex is a valid slope").canonical()
        );
        edge
    }
}

/// All vertices of level ≤ n with their levels, in the cyclic circle order:
/// 1/0 first, then V⁺ slopes by decreasing value, then 0/1, then V⁻ slopes
/// by decreasing value (from near 0 back toward -1/0).
pub fn level_vertices(n: u32) -> Vec<(Slope, u32)> {
    let mut pos: Vec<(Slope, u32)> = Vec::new();
    let mut neg: Vec<(Slope, u32)> = Vec::new();
    for seed in EdgeRec::seeds() {
        let mut stack = vec![seed];
        while let Some(e) = stack.pop() {
            if e.level >= n {
                continue;
            }
            let z = e.child();
            let s = Slope::new(z.0, z.1).expect("tree vertex is a valid slope");
            if s.p > 0 {
                pos.push((s, e.level + 1));
            } else {
                neg.push((s, e.level + 1));
            }
            let (left, right) = e.expand();
            stack.push(left);
            stack.push(right);
        }
    }
    let by_desc_value =
        |a: &(Slope, u32), b: &(Slope, u32)| (b.0.p * a.0.q).cmp(&(a.0.p * b.0.q));
    pos.sort_by(by_desc_value);
    neg.sort_by(by_desc_value);
    let mut out = Vec::with_capacity(pos.len() + neg.len() + 2);
    out.push((Slope::infinity(), 0));
    out.append(&mut pos);
    out.push((Slope::zero(), 0));
    out.append(&mut neg);
    out
}

/// All co-directed edges of level exactly n (2^{n+1} of them), in the cyclic
/// interval order of [`level_partition`].
pub fn level_edges(n: u32) -> Vec<FareyEdge> {
    level_partition(n).intervals
}

/// The level-n partition of the circle: the vertices of level ≤ n (`kept`)
/// and the 2^{n+1} complementary intervals, each named by its bounding
/// co-directed edge of level n.  Intervals are listed cyclically: V⁺ from
/// the 1/0 side to the 0/1 side, then V⁻ from the 0/1 side back to -1/0.
#[derive(Clone, Debug)]
pub struct Partition {
    pub n: u32,
    pub kept: Vec<Slope>,
    pub intervals: Vec<FareyEdge>,
}

/// Builds the level-n partition.
pub fn level_partition(n: u32) -> Partition {
    fn emit(e: EdgeRec, n: u32, reverse: bool, out: &mut Vec<FareyEdge>) {
        if e.level == n {
            out.push(e.to_edge());
            return;
        }
        let (first, second) = e.expand();
        let (first, second) = if reverse { (second, first) } else { (first, second) };
        emit(first, n, reverse, out);
        emit(second, n, reverse, out);
    }
    let [vp, vn] = EdgeRec::seeds();
    let mut intervals = Vec::with_capacity(1usize << (n + 1));
    // V⁺ intervals run from the 1/0 side toward 0/1; V⁻ continues cyclically
    // from the 0/1 side back toward -1/0, hence the reversed traversal.
    emit(vp, n, false, &mut intervals);
    emit(vn, n, true, &mut intervals);
    let kept = level_vertices(n).into_iter().map(|(s, _)| s).collect();
    Partition { n, kept, intervals }
}

/// Membership test: is `s` in the open interval cut off by the co-directed
/// edge `e` (on the far side of the base edge)?
pub fn interval_contains(e: &FareyEdge, s: Slope) -> bool {
    // The interval of a co-directed edge [x, y] consists of the slopes
    // strictly between x and y in the sweep of their half-plane.
    sweep_precedes(e.from, s) && sweep_precedes(s, e.to)
}

// ---------------------------------------------------------------------------
// Continued fractions.
// ---------------------------------------------------------------------------

/// Builds the Christoffel basis and word of the positive slope with
/// continued-fraction expansion [n₀; n₁, …, n_k] = n₀ + 1/(n₁ + 1/(…)),
/// n₀ ≥ 0 and nᵢ ≥ 1, by the L/R monoid action on bases:
/// L(x, y) = (x, xy) and R(x, y) = (xy, y).  Starting from (a, b), apply
/// L^{n₀}, then R^{n₁}, L^{n₂}, … alternating, with the final exponent
/// reduced by one; the word of the slope is then x·y of the final basis.
/// Returns ((x, y), slope, word).
pub fn christoffel_from_cf(cf: &[i64]) -> Result<((Word, Word), Slope, Word)> {
    if cf.is_empty() {
        return Err(Error::BadContinuedFraction("empty expansion".into()));
    }
    if cf[0] < 0 {
        return Err(Error::BadContinuedFraction(format!("n0 = {} < 0", cf[0])));
    }
    if cf.iter().skip(1).any(|&n| n < 1) {
        return Err(Error::BadContinuedFraction("entries after n0 must be ≥ 1".into()));
    }
    // Normalize a trailing 1: […, m, 1] and […, m+1] name the same rational.
    let mut cf: Vec<i64> = cf.to_vec();
    while cf.len() >= 2 && *cf.last().unwrap() == 1 {
        cf.pop();
        *cf.last_mut().unwrap() += 1;
    }
    if cf == [0] {
        return Ok(((Word::gen_a(), Word::gen_b()), Slope::zero(), Word::gen_b()));
    }
    let k = cf.len() - 1;
    if k >= 1 && cf[k] < 2 {
        return Err(Error::BadContinuedFraction("final entry must be ≥ 2 (or use a trailing 1)".into()));
    }
    let mut x = Word::gen_a();
    let mut y = Word::gen_b();
    for (i, &n) in cf.iter().enumerate() {
        let reps = if i == k { n - 1 } else { n };
        for _ in 0..reps {
            if i % 2 == 0 {
                y = x.concat(&y); // L: (x, y) -> (x, xy)
            } else {
                x = x.concat(&y); // R: (x, y) -> (xy, y)
            }
        }
    }
    let word = x.concat(&y);
    let (p, q) = word.abelianize();
    let slope = Slope::new(p, q)?;
    Ok(((x, y), slope, word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    #[test]
    fn slope_normalization() {
        assert_eq!(Slope::new(10, 6).unwrap(), s("5/3"));
        assert_eq!(Slope::new(3, -2).unwrap(), s("-3/2"));
        assert_eq!(Slope::new(-2, 0).unwrap(), s("-1/0"));
        assert_eq!(s("-1/0").canonical(), s("1/0"));
        assert!(Slope::new(0, 0).is_err());
        assert_eq!(s("5/3").to_string(), "5/3");
    }

    #[test]
    fn level_examples() {
        assert_eq!(level(s("1/0")), 0);
        assert_eq!(level(s("-1/0")), 0);
        assert_eq!(level(s("0/1")), 0);
        assert_eq!(level(s("1/1")), 1);
        assert_eq!(level(s("-1/1")), 1);
        assert_eq!(level(s("2/1")), 2);
        assert_eq!(level(s("1/2")), 2);
        assert_eq!(level(s("3/2")), 3);
        assert_eq!(level(s("5/3")), 4);
        assert_eq!(level(s("-5/3")), 4);
        assert_eq!(level(s("7/1")), 7);
    }

    #[test]
    fn christoffel_examples() {
        assert_eq!(christoffel(s("1/0")).to_string(), "a");
        assert_eq!(christoffel(s("-1/0")).to_string(), "A");
        assert_eq!(christoffel(s("0/1")).to_string(), "b");
        assert_eq!(christoffel(s("1/1")).to_string(), "ab");
        assert_eq!(christoffel(s("2/1")).to_string(), "aab");
        assert_eq!(christoffel(s("1/2")).to_string(), "abb");
        assert_eq!(christoffel(s("3/2")).to_string(), "aabab");
        assert_eq!(christoffel(s("5/3")).to_string(), "aabaabab");
        assert_eq!(christoffel(s("-1/1")).to_string(), "Ab");
        assert_eq!(christoffel(s("-2/1")).to_string(), "AAb");
        assert_eq!(christoffel(s("-1/2")).to_string(), "Abb");
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci(s("1/0")), 1);
        assert_eq!(fibonacci(s("1/1")), 2);
        assert_eq!(fibonacci(s("5/3")), 8);
        assert_eq!(fibonacci(s("17/10")), 27);
        assert_eq!(fibonacci(s("-2/1")), 3);
    }

    #[test]
    fn palindrome_examples() {
        assert_eq!(palindrome_rep(s("1/1")).to_string(), "ba");
        assert_eq!(palindrome_rep(s("2/1")).to_string(), "aba");
        assert_eq!(palindrome_rep(s("1/2")).to_string(), "bab");
        assert_eq!(palindrome_rep(s("3/2")).to_string(), "ababa");
        assert_eq!(palindrome_rep(s("-1/1")).to_string(), "bA");
        assert_eq!(palindrome_rep(s("-2/1")).to_string(), "AbA");
        assert_eq!(palindrome_rep(s("-1/2")).to_string(), "bAb");
    }

    #[test]
    fn tricolor_examples() {
        assert_eq!(tricolor(s("1/0")), Color::Black);
        assert_eq!(tricolor(s("0/1")), Color::White);
        assert_eq!(tricolor(s("1/1")), Color::Gray);
        assert_eq!(tricolor(s("5/3")), Color::Gray);
        assert_eq!(tricolor(s("2/1")), Color::White);
        assert_eq!(tricolor(s("-2/1")), Color::White);
        assert_eq!(tricolor(s("1/2")), Color::Black);
    }

    #[test]
    fn edge_construction_and_children() {
        let base = FareyEdge::new(s("1/0"), s("0/1")).unwrap();
        assert!(base.co_directed);
        assert_eq!(base.children(), (s("-1/1"), s("1/1")));

        let e = FareyEdge::new(s("1/1"), s("0/1")).unwrap();
        assert!(e.co_directed);
        assert_eq!(e.children(), (s("1/0"), s("1/2")));

        let e = FareyEdge::new(s("2/1"), s("1/1")).unwrap();
        assert_eq!(e.children(), (s("1/0"), s("3/2")));
        assert_eq!(e.level(), 2);

        let rev = FareyEdge::new(s("1/1"), s("2/1")).unwrap();
        assert!(!rev.co_directed);

        let neg = FareyEdge::new(s("-1/0"), s("-2/1")).unwrap();
        assert!(neg.co_directed);

        assert!(FareyEdge::new(s("1/0"), s("1/2")).is_err());
        assert!(FareyEdge::new(s("5/3"), s("2/3")).is_err());
    }

    #[test]
    fn partition_counts_and_order() {
        let p0 = level_partition(0);
        assert_eq!(p0.intervals.len(), 2);
        assert_eq!(p0.kept.len(), 2);

        let p1 = level_partition(1);
        assert_eq!(p1.intervals.len(), 4);
        assert_eq!(p1.kept.len(), 4); // 1/0, 1/1, 0/1, -1/1

        let p2 = level_partition(2);
        assert_eq!(p2.intervals.len(), 8);
        // Distinct vertices of level ≤ 2 (∞ counted once):
        // 1/0, 0/1, ±1/1, ±2/1, ±1/2.
        assert_eq!(p2.kept.len(), 8);
        assert_eq!(
            p2.kept,
            vec![
                s("1/0"),
                s("2/1"),
                s("1/1"),
                s("1/2"),
                s("0/1"),
                s("-1/2"),
                s("-1/1"),
                s("-2/1"),
            ]
        );

        // Interval order at level 1: V⁺ from the 1/0 side, then V⁻ from the
        // 0/1 side back.
        let ivs: Vec<String> = p1.intervals.iter().map(|e| e.to_string()).collect();
        assert_eq!(ivs, vec!["[1/0, 1/1]", "[1/1, 0/1]", "[-1/1, 0/1]", "[-1/0, -1/1]"]);
        assert!(p1.intervals.iter().all(|e| e.co_directed));
        assert!(p1.intervals.iter().all(|e| e.level() == 1));
    }

    #[test]
    fn interval_membership() {
        let e = FareyEdge::new(s("2/1"), s("1/1")).unwrap();
        assert!(interval_contains(&e, s("3/2")));
        assert!(interval_contains(&e, s("5/3")));
        assert!(!interval_contains(&e, s("2/1")));
        assert!(!interval_contains(&e, s("3/1")));
        assert!(!interval_contains(&e, s("-3/2")));

        let neg = FareyEdge::new(s("-1/0"), s("-1/1")).unwrap();
        assert!(interval_contains(&neg, s("-2/1")));
        assert!(!interval_contains(&neg, s("-1/2")));
    }

    #[test]
    fn vertices_listing() {
        let vs = level_vertices(2);
        assert_eq!(vs.len(), 8);
        assert_eq!(vs[0], (s("1/0"), 0));
        assert!(vs.iter().all(|&(v, lv)| level(v) == lv));
        // Counts per level: 2 at level ≤ 0 is the two base vertices; each
        // level k ≥ 1 contributes 2^k new vertices.
        let v8 = level_vertices(8);
        assert_eq!(v8.len(), 2 + (2usize << 8) - 2); // 2 + 2^9 - 2 = 512
    }

    #[test]
    fn continued_fraction_examples() {
        let (_, slope, word) = christoffel_from_cf(&[2]).unwrap();
        assert_eq!(slope, s("2/1"));
        assert_eq!(word.to_string(), "aab");

        let (_, slope, word) = christoffel_from_cf(&[0]).unwrap();
        assert_eq!(slope, s("0/1"));
        assert_eq!(word.to_string(), "b");

        let ((x, y), slope, word) = christoffel_from_cf(&[1, 1, 2, 2, 1]).unwrap();
        assert_eq!(slope, s("17/10"));
        assert_eq!(x.to_string(), "aab".repeat(1) + &"aabaabab".repeat(2));
        assert_eq!(y.to_string(), "aabaabab");
        assert_eq!(word, christoffel(s("17/10")));
        // Same value via the [1; 1, 2, 3] form.
        let (_, slope2, word2) = christoffel_from_cf(&[1, 1, 2, 3]).unwrap();
        assert_eq!(slope2, s("17/10"));
        assert_eq!(word2, word);

        assert!(christoffel_from_cf(&[]).is_err());
        assert!(christoffel_from_cf(&[-1]).is_err());
        assert!(christoffel_from_cf(&[2, 0, 1]).is_err());
    }

    proptest! {
        /// Christoffel words abelianize to their slope and are cyclically
        /// reduced positive words.
        #[test]
        fn christoffel_abelianization(p in 1i64..60, q in 1i64..60) {
            let g = super::gcd(p as u64, q as u64) as i64;
            let slope = Slope::new(p / g, q / g).unwrap();
            let w = christoffel(slope);
            prop_assert_eq!(w.abelianize(), (slope.p(), slope.q()));
            prop_assert!(w.is_cyclically_reduced());
            prop_assert!(w.letters().iter().all(|&l| l > 0));
            prop_assert_eq!(w.len() as u64, fibonacci(slope));
            // The palindrome candidate represents the same class size.
            let pal = palindrome_rep(slope);
            prop_assert_eq!(pal.abelianize(), (slope.p(), slope.q()));
            prop_assert_eq!(pal.is_palindrome(), tricolor(slope) != Color::Gray);
        }

        /// Mirrored slopes mirror their words under a ↦ a⁻¹.
        #[test]
        fn mirror_symmetry(p in 1i64..40, q in 1i64..40) {
            let g = super::gcd(p as u64, q as u64) as i64;
            let slope = Slope::new(p / g, q / g).unwrap();
            let w = christoffel(slope);
            let m = christoffel(slope.mirror());
            let mirrored = Word::from_letters(
                w.letters().iter().map(|&l| if l.abs() == 1 { -l } else { l }));
            prop_assert_eq!(m, mirrored);
        }
    }
}
