//! Distances between a vertex ball and its neighbouring balls, and the
//! equivariance certificate `d(sx, sy) = β_s d(x, y)`.
//!
//! A point of the ball of `∂₁f` glued along `f` at the coset `h` is written
//! `[h·γ_f, q]` with `γ_f = g_f⁻¹ g_f̄`. Since `a·γ_f = γ_f·b` for
//! `a = α_f(s)`, `b = α_f̄(s)`, the same point is `[h·aʲ·γ_f, b⁻ʲ·q]`; we
//! store the shortlex-least `h·aʲ`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::britton::all_reduced_words;
use super::{BetaAssignment, CombineError, EndAssignment, GraphOfGroups, Solution};
use crate::freegrp::{format_word, Word};
use crate::ogroup::{AffineMap, LexVector, OAutomorphism};

/// A point in a ball adjacent to the base ball of `∂₀edge`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdjacentPoint {
    pub edge: usize,
    pub coset: Word,
    pub point: Word,
}

/// `θ_{γ_f} = θ_{g_f}⁻¹ θ_{g_f̄}`.
fn theta_gamma(g: &GraphOfGroups, sol: &Solution, f: usize) -> OAutomorphism {
    let r = g.edges[f].rev;
    sol.theta[f]
        .invert()
        .compose(&sol.theta[r])
        .expect("dilations share one signature")
}

/// Shortlex-least representative `h·aʲ` of `h⟨a⟩`, with `j`.
pub(crate) fn canonical_coset(g: &GraphOfGroups, f: usize, h: &Word) -> (Word, i64) {
    let a = &g.edges[f].alpha;
    let h = h.reduce();
    if a.is_empty() {
        return (h, 0);
    }
    let reach = (2 * h.len() + a.len() + 1) as i64;
    (-reach..=reach)
        .map(|j| (h.mul(&a.pow(j)), j))
        .min_by(|(x, _), (y, _)| (x.len(), x).cmp(&(y.len(), y)))
        .expect("nonempty range")
}

fn check_points(g: &GraphOfGroups, sol: &Solution, f: usize, x: &Word, y: &Word) -> Result<(), CombineError> {
    let here = &sol.vertices[g.edges[f].origin].ambient;
    let there = &sol.vertices[g.terminus(f)].ambient;
    if x.letters().iter().any(|l| l.gen() >= here.rank()) || y.letters().iter().any(|l| l.gen() >= there.rank()) {
        return Err(CombineError::Spec(format!(
            "points are not in the balls joined by edge {}",
            g.edges[f].id
        )));
    }
    Ok(())
}

/// `d(x, [γ_f, y]) = (1, −(δ_f(x) + θ_{γ_f} δ_f̄(y)))` for `x` in the ball of
/// `∂₀f` and `y` in the ball of `∂₁f`.
pub fn adjacent_metric(
    g: &GraphOfGroups,
    sol: &Solution,
    ends: &EndAssignment,
    f: usize,
    x: &Word,
    y: &Word,
) -> Result<LexVector, CombineError> {
    check_points(g, sol, f, x, y)?;
    let r = g.edges[f].rev;
    let dx = sol.delta(g, ends, f, &x.reduce())?;
    let dy = theta_gamma(g, sol, f).apply(&sol.delta(g, ends, r, &y.reduce())?)?;
    Ok((-(dx + dy)).with_integer_prefix(&1.into()))
}

/// `d(x, [h·γ_f, q]) = β_h d(h⁻¹x, [γ_f, q])`.
pub fn adjacent_distance(
    g: &GraphOfGroups,
    sol: &Solution,
    beta: &BetaAssignment,
    ends: &EndAssignment,
    x: &Word,
    y: &AdjacentPoint,
) -> Result<LexVector, CombineError> {
    let v = g.edges[y.edge].origin;
    let hx = sol.vertices[v].embed(&y.coset).inverse().mul(x);
    let base = adjacent_metric(g, sol, ends, y.edge, &hx, &y.point)?;
    Ok(beta.of_word(&g.to_gamma(v, &y.coset)).apply_extended(&base)?)
}

/// `s·[h·γ_f, q]` in canonical form.
pub(crate) fn act_on_adjacent(g: &GraphOfGroups, sol: &Solution, s: &Word, y: &AdjacentPoint) -> AdjacentPoint {
    let (h, j) = canonical_coset(g, y.edge, &s.mul(&y.coset));
    let r = g.edges[y.edge].rev;
    let b = g.edges[r].alpha.pow(-j);
    let z = sol.vertices[g.terminus(y.edge)].embed(&b);
    AdjacentPoint {
        edge: y.edge,
        coset: h,
        point: z.mul(&y.point),
    }
}

/// Checked exact arithmetic on small rationals, kept as integer numerators
/// over one shared denominator so that no gcd is ever taken. Any overflow
/// yields `None` and the caller falls back to arbitrary precision.
mod fast {
    use super::*;

    pub const MAX: usize = 5;

    #[derive(Debug, Clone, Copy)]
    pub struct Vector {
        pub len: usize,
        /// Positive.
        den: i128,
        c: [i128; MAX],
    }

    fn lcm(a: i128, b: i128) -> Option<i128> {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        (a / x).checked_mul(b)
    }

    /// Numerators over a common positive denominator.
    fn common(xs: impl Iterator<Item = BigRational> + Clone) -> Option<(i128, Vec<i128>)> {
        let mut den = 1i128;
        for x in xs.clone() {
            den = lcm(den, x.denom().to_i128()?)?;
        }
        let nums = xs
            .map(|x| x.numer().to_i128()?.checked_mul(den / x.denom().to_i128()?))
            .collect::<Option<Vec<_>>>()?;
        Some((den, nums))
    }

    impl Vector {
        pub fn from(v: &LexVector) -> Option<Self> {
            let n = v.coords().len();
            if n > MAX {
                return None;
            }
            let (den, nums) = common(v.coords().iter().cloned())?;
            let mut c = [0; MAX];
            c[..n].copy_from_slice(&nums);
            Some(Vector { len: n, den, c })
        }

        /// Exact equality.
        pub fn same(&self, o: &Self) -> Option<bool> {
            if self.len != o.len {
                return Some(false);
            }
            if self.den == o.den {
                return Some(self.c[..self.len] == o.c[..o.len]);
            }
            for i in 0..self.len {
                if self.c[i].checked_mul(o.den)? != o.c[i].checked_mul(self.den)? {
                    return Some(false);
                }
            }
            Some(true)
        }

        fn rescaled(&self, den: i128) -> Option<Self> {
            let k = den / self.den;
            let mut out = *self;
            out.den = den;
            for x in &mut out.c[..self.len] {
                *x = x.checked_mul(k)?;
            }
            Some(out)
        }

        pub fn add(&self, o: &Self) -> Option<Self> {
            let (a, b) = if self.den == o.den {
                (*self, *o)
            } else {
                let den = lcm(self.den, o.den)?;
                (self.rescaled(den)?, o.rescaled(den)?)
            };
            let mut out = a;
            for i in 0..a.len {
                out.c[i] = a.c[i].checked_add(b.c[i])?;
            }
            Some(out)
        }

        pub fn neg(&self) -> Option<Self> {
            self.scaled(-1)
        }

        pub fn scaled(&self, k: i128) -> Option<Self> {
            let mut out = *self;
            for x in &mut out.c[..self.len] {
                *x = x.checked_mul(k)?;
            }
            Some(out)
        }

        /// `(m, self)`.
        pub fn prefixed(&self, m: i128) -> Option<Self> {
            if self.len + 1 > MAX {
                return None;
            }
            let mut c = [0; MAX];
            c[0] = m.checked_mul(self.den)?;
            c[1..=self.len].copy_from_slice(&self.c[..self.len]);
            Some(Vector {
                len: self.len + 1,
                den: self.den,
                c,
            })
        }
    }

    pub struct Affine {
        n: usize,
        /// `θ = theta / den`.
        den: i128,
        theta: [[i128; MAX]; MAX],
        mu: Vector,
    }

    impl Affine {
        pub fn from(a: &AffineMap) -> Option<Self> {
            let n = a.signature().rank();
            if n >= MAX {
                return None;
            }
            let (den, nums) = common(a.theta().matrix().iter().flatten().cloned())?;
            let mut theta = [[0; MAX]; MAX];
            for (k, x) in nums.into_iter().enumerate() {
                theta[k / n][k % n] = x;
            }
            Some(Affine {
                n,
                den,
                theta,
                mu: Vector::from(a.mu())?,
            })
        }

        pub fn from_theta(t: &OAutomorphism) -> Option<Self> {
            Self::from(&AffineMap::dilation(t.clone()))
        }

        /// `θ·x` on Λ₀.
        pub fn linear(&self, x: &Vector) -> Option<Vector> {
            let mut out = Vector {
                len: self.n,
                den: x.den.checked_mul(self.den)?,
                c: [0; MAX],
            };
            for i in 0..self.n {
                let mut acc = 0i128;
                for j in 0..=i {
                    acc = acc.checked_add(self.theta[i][j].checked_mul(x.c[j])?)?;
                }
                out.c[i] = acc;
            }
            Some(out)
        }

        /// `(m, λ) ↦ (m, θλ + m·μ)`.
        pub fn apply_extended(&self, x: &Vector) -> Option<Vector> {
            if x.c[0] % x.den != 0 {
                return None;
            }
            let m = x.c[0] / x.den;
            let mut tail = Vector {
                len: self.n,
                den: x.den,
                c: [0; MAX],
            };
            tail.c[..self.n].copy_from_slice(&x.c[1..=self.n]);
            self.linear(&tail)?.add(&self.mu.scaled(m)?)?.prefixed(m)
        }
    }
}

use fast::{Affine, Vector};

/// First equivariance failure found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: String,
    pub element: String,
    pub x: String,
    pub y: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub bound: usize,
    pub elements: usize,
    pub same_ball_checks: u64,
    pub adjacent_checks: u64,
    /// Checks that needed arbitrary-precision arithmetic.
    pub slow_checks: u64,
    pub violation: Option<Violation>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

struct DeltaCache<'a> {
    g: &'a GraphOfGroups,
    sol: &'a Solution,
    ends: &'a EndAssignment,
    /// One map per edge.
    map: Vec<HashMap<Word, (LexVector, Option<Vector>)>>,
}

impl DeltaCache<'_> {
    fn new<'a>(g: &'a GraphOfGroups, sol: &'a Solution, ends: &'a EndAssignment) -> DeltaCache<'a> {
        DeltaCache {
            g,
            sol,
            ends,
            map: vec![HashMap::new(); g.edges.len()],
        }
    }

    fn get(&mut self, f: usize, p: &Word) -> Result<&(LexVector, Option<Vector>), CombineError> {
        if !self.map[f].contains_key(p) {
            let d = self.sol.delta(self.g, self.ends, f, p)?;
            let fd = Vector::from(&d);
            self.map[f].insert(p.clone(), (d, fd));
        }
        Ok(&self.map[f][p])
    }
}

#[derive(Default)]
struct Tally {
    same: u64,
    adjacent: u64,
    slow: u64,
    violation: Option<Violation>,
}

struct Setup<'a> {
    g: &'a GraphOfGroups,
    sol: &'a Solution,
    beta: &'a BetaAssignment,
    vertex: usize,
    points: Vec<Word>,
    /// `d(p, p')` for base-ball points.
    same: Vec<Vec<(LexVector, Option<Vector>)>>,
    adjacent: Vec<AdjacentPoint>,
    /// `d(p, y)` for base-ball points and adjacent points.
    cross: Vec<Vec<(LexVector, Option<Vector>)>>,
    weights: Vec<Option<Vector>>,
}

fn both(v: LexVector) -> (LexVector, Option<Vector>) {
    let f = Vector::from(&v);
    (v, f)
}

impl Setup<'_> {
    fn violation(&self, s: &Word, x: &Word, y: String, lhs: &LexVector, rhs: &LexVector) -> Violation {
        let vx = &self.sol.vertices[self.vertex];
        Violation {
            vertex: vx.id.clone(),
            element: format_word(&vx.generators, s),
            x: format_word(vx.ambient.alphabet(), x),
            y,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    fn describe(&self, y: &AdjacentPoint) -> String {
        let f = y.edge;
        let here = &self.sol.vertices[self.vertex];
        let there = &self.sol.vertices[self.g.terminus(f)];
        format!(
            "[{}·γ_{}, {}]",
            format_word(&here.generators, &y.coset),
            self.g.edges[f].id,
            format_word(there.ambient.alphabet(), &y.point)
        )
    }

    /// Length of the reduced word `a⁻¹b` for reduced `a`, `b`, without
    /// building it.
    fn fast_distance(&self, a: &Word, b: &Word) -> Option<Vector> {
        let (a, b) = (a.letters(), b.letters());
        let common = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        let mut counts = [0i128; 8];
        if self.weights.len() > counts.len() {
            return None;
        }
        for l in a[common..].iter().chain(&b[common..]) {
            counts[l.gen()] += 1;
        }
        self.fast_weighted(&counts)
    }

    fn fast_weighted(&self, counts: &[i128]) -> Option<Vector> {
        let mut acc: Option<Vector> = None;
        for (k, c) in counts.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let term = self.weights[k]?.scaled(*c)?;
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        match acc {
            Some(a) => Some(a),
            None => Vector::from(&LexVector::zero(&self.sol.signature)),
        }
    }

    fn run_element(&self, cache: &mut DeltaCache, s: &Word) -> Result<Tally, CombineError> {
        let mut t = Tally::default();
        let vx = &self.sol.vertices[self.vertex];
        let amb = &vx.ambient;
        let phi = vx.embed(s);
        let beta_s = self.beta.of_word(&self.g.to_gamma(self.vertex, s));
        let fast_s = Affine::from(&beta_s);

        // Same ball: d(sp, sp') = (0, d(sp, sp')).
        let moved: Vec<Word> = self.points.iter().map(|p| phi.mul(p)).collect();
        for (i, sp) in moved.iter().enumerate() {
            for (j, sq) in moved.iter().enumerate() {
                t.same += 1;
                let quick = (|| {
                    let lhs = self.fast_distance(sp, sq)?.prefixed(0)?;
                    let rhs = fast_s.as_ref()?.apply_extended(&self.same[i][j].1?.prefixed(0)?)?;
                    lhs.same(&rhs)
                })();
                if quick == Some(true) {
                    continue;
                }
                t.slow += 1;
                let lhs = amb.word_length(&sp.inverse().mul(sq)).with_integer_prefix(&0.into());
                let rhs = beta_s.apply_extended(&self.same[i][j].0.with_integer_prefix(&0.into()))?;
                if lhs != rhs {
                    t.violation = Some(self.violation(s, &self.points[i], format_word(amb.alphabet(), &self.points[j]), &lhs, &rhs));
                    return Ok(t);
                }
            }
        }

        // Adjacent balls.
        for (k, y) in self.adjacent.iter().enumerate() {
            let sy = act_on_adjacent(self.g, self.sol, s, y);
            let f = y.edge;
            let r = self.g.edges[f].rev;
            let tg = theta_gamma(self.g, self.sol, f);
            let beta_h = self.beta.of_word(&self.g.to_gamma(self.vertex, &sy.coset));
            let shift = vx.embed(&sy.coset).inverse().mul(&phi);
            let c_slow = tg.apply(&cache.get(r, &sy.point.reduce())?.0.clone())?;
            let c_fast = cache.get(r, &sy.point.reduce())?.1.and_then(|d| Affine::from_theta(&tg)?.linear(&d));
            let fast_h = Affine::from(&beta_h);
            for (i, p) in self.points.iter().enumerate() {
                t.adjacent += 1;
                let x = shift.mul(p);
                let d_fast = cache.get(f, &x)?.1;
                let quick = (|| {
                    let inner = d_fast?.add(&c_fast?)?.neg()?.prefixed(1)?;
                    let lhs = fast_h.as_ref()?.apply_extended(&inner)?;
                    let rhs = fast_s.as_ref()?.apply_extended(&self.cross[i][k].1?)?;
                    lhs.same(&rhs)
                })();
                if quick == Some(true) {
                    continue;
                }
                t.slow += 1;
                let d_slow = cache.get(f, &x)?.0.clone();
                let inner = (-(d_slow + &c_slow)).with_integer_prefix(&1.into());
                let lhs = beta_h.apply_extended(&inner)?;
                let rhs = beta_s.apply_extended(&self.cross[i][k].0)?;
                if lhs != rhs {
                    t.violation = Some(self.violation(s, p, self.describe(y), &lhs, &rhs));
                    return Ok(t);
                }
            }
        }
        Ok(t)
    }
}

/// Checks `d(sx, sy) = β_s d(x, y)` for every vertex-group element `s` of
/// length at most `bound`, every pair of base-ball points of length at most
/// `bound`, and every base-ball point against every point of length at most
/// `bound` in each identity-adjacent ball.
pub fn check_equivariance(
    g: &GraphOfGroups,
    sol: &Solution,
    beta: &BetaAssignment,
    ends: &EndAssignment,
    bound: usize,
) -> Result<EquivarianceReport, CombineError> {
    let mut report = EquivarianceReport {
        bound,
        elements: 0,
        same_ball_checks: 0,
        adjacent_checks: 0,
        slow_checks: 0,
        violation: None,
    };
    for v in 0..g.vertices.len() {
        let vx = &sol.vertices[v];
        let points = all_reduced_words(vx.ambient.rank(), bound);
        let mut adjacent = Vec::new();
        for f in g.edges_at(v) {
            let there = &sol.vertices[g.terminus(f)];
            for q in all_reduced_words(there.ambient.rank(), bound) {
                adjacent.push(AdjacentPoint {
                    edge: f,
                    coset: Word::empty(),
                    point: q,
                });
            }
        }
        let same = points
            .iter()
            .map(|p| points.iter().map(|q| both(vx.ambient.distance(p, q))).collect())
            .collect();
        let cross = points
            .iter()
            .map(|p| {
                adjacent
                    .iter()
                    .map(|y| adjacent_distance(g, sol, beta, ends, p, y).map(both))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let setup = Setup {
            g,
            sol,
            beta,
            vertex: v,
            points,
            same,
            adjacent,
            cross,
            weights: vx.ambient.weights().iter().map(Vector::from).collect(),
        };
        let elements = all_reduced_words(vx.rank(), bound);
        report.elements += elements.len();
        let tallies: Vec<Result<Tally, CombineError>> = elements
            .par_iter()
            .map_init(
                || DeltaCache::new(g, sol, ends),
                |cache, s| setup.run_element(cache, s),
            )
            .collect();
        for t in tallies {
            let t = t?;
            report.same_ball_checks += t.same;
            report.adjacent_checks += t.adjacent;
            report.slow_checks += t.slow;
            if report.violation.is_none() {
                report.violation = t.violation;
            }
        }
        if report.violation.is_some() {
            break;
        }
    }
    Ok(report)
}
