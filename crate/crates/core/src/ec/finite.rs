//! Curves over prime fields and exact point counting.
//!
//! Three independent counters are provided and dispatched by the size of `p`:
//! direct enumeration for tiny fields, a Legendre-symbol sum over the
//! completed-square cubic for mid-sized fields, and a baby-step/giant-step
//! search for the group order inside the Hasse interval for large fields.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{add_mod, factor_u64, inv_mod, isqrt, legendre, mul_mod, sqrt_mod, sub_mod};

pub const ENUMERATION_LIMIT: u64 = 13;
pub const CHARACTER_SUM_LIMIT: u64 = 100_000;
pub const MAX_COUNTING_PRIME: u64 = 1_000_000_000;

/// Random points tried before the BSGS counter gives up on disambiguation.
const BSGS_SAMPLES: usize = 40;

/// Largest field for which the character sum tabulates quadratic residues.
const SQUARE_TABLE_LIMIT: u64 = 1 << 24;

/// Which algorithm produced a point count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Enumeration,
    CharacterSum,
    BabyStepGiantStep,
}

/// Reduction of a Weierstrass model modulo a prime of good reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCurve {
    p: u64,
    a: [u64; 5],
}

impl FiniteCurve {
    /// `a` must already be reduced into `[0, p)`; the model must be nonsingular.
    pub(crate) fn new(p: u64, a: [u64; 5]) -> Self {
        let c = FiniteCurve { p, a };
        debug_assert!(c.discriminant() != 0, "singular reduction at {p}");
        c
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> [u64; 5] {
        self.a
    }

    fn b_invariants(&self) -> [u64; 4] {
        let p = self.p;
        let [a1, a2, a3, a4, a6] = self.a;
        let m = |x, y| mul_mod(x, y, p);
        let b2 = add_mod(m(a1, a1), m(4, a2), p);
        let b4 = add_mod(m(2, a4), m(a1, a3), p);
        let b6 = add_mod(m(a3, a3), m(4, a6), p);
        let b8 = sub_mod(
            add_mod(add_mod(m(m(a1, a1), a6), m(m(4, a2), a6), p), m(m(a2, a3), a3), p),
            add_mod(m(m(a1, a3), a4), m(a4, a4), p),
            p,
        );
        [b2, b4, b6, b8]
    }

    /// Discriminant of the reduced model, in `[0, p)`.
    pub fn discriminant(&self) -> u64 {
        let p = self.p;
        let [b2, b4, b6, b8] = self.b_invariants();
        let m = |x, y| mul_mod(x, y, p);
        let pos = m(m(9, b2), m(b4, b6));
        let neg = add_mod(
            add_mod(m(m(b2, b2), b8), m(8, m(b4, m(b4, b4))), p),
            m(27, m(b6, b6)),
            p,
        );
        sub_mod(pos, neg, p)
    }

    /// Coefficients `(A, B)` of an isomorphic model `y^2 = x^3 + A x + B`; needs `p >= 5`.
    pub fn short_model(&self) -> (u64, u64) {
        let p = self.p;
        assert!(p >= 5, "short Weierstrass form needs p >= 5");
        let [b2, b4, b6, _] = self.b_invariants();
        let m = |x, y| mul_mod(x, y, p);
        let c4 = sub_mod(m(b2, b2), m(24, b4), p);
        let c6 = sub_mod(m(36, m(b2, b4)), add_mod(m(b2, m(b2, b2)), m(216, b6), p), p);
        (sub_mod(0, m(27, c4), p), sub_mod(0, m(54, c6), p))
    }

    /// Quadratic twist by `d` (a non-residue gives the nontrivial twist); `p >= 5`.
    pub fn quadratic_twist(&self, d: u64) -> FiniteCurve {
        let p = self.p;
        let (a, b) = self.short_model();
        let d = d % p;
        let d2 = mul_mod(d, d, p);
        FiniteCurve::new(p, [0, 0, 0, mul_mod(d2, a, p), mul_mod(mul_mod(d2, d, p), b, p)])
    }

    /// Order of the group of rational points, including the point at infinity.
    pub fn count_points(&self) -> u64 {
        self.count_points_with_method().0
    }

    pub fn count_points_with_method(&self) -> (u64, CountMethod) {
        if self.p <= ENUMERATION_LIMIT {
            (self.count_by_enumeration(), CountMethod::Enumeration)
        } else if self.p <= CHARACTER_SUM_LIMIT {
            (self.count_by_character_sum(), CountMethod::CharacterSum)
        } else {
            match self.count_by_bsgs_unchecked() {
                Some(n) => (n, CountMethod::BabyStepGiantStep),
                None => (self.count_by_character_sum(), CountMethod::CharacterSum),
            }
        }
    }

    /// Enumerate all affine pairs; `O(p^2)`.
    pub fn count_by_enumeration(&self) -> u64 {
        count_cubic_points_enumerate(self.p, &self.a)
    }

    /// `p + 1 + Σ_x χ(4x^3 + b2 x^2 + 2 b4 x + b6)`; falls back to
    /// enumeration for `p = 2`.
    pub fn count_by_character_sum(&self) -> u64 {
        count_cubic_points(self.p, &self.a)
    }

    /// Group order from point orders in the Hasse interval. Falls back to the
    /// character sum if 40 samples leave more than one candidate, and to
    /// enumeration for `p < 5`.
    pub fn count_by_bsgs(&self) -> u64 {
        if self.p < 5 {
            return self.count_by_enumeration();
        }
        self.count_by_bsgs_unchecked().unwrap_or_else(|| self.count_by_character_sum())
    }

    /// The BSGS counter without any fallback: `None` when the sampled point
    /// orders do not pin down a unique multiple in the Hasse interval.
    pub fn count_by_bsgs_unchecked(&self) -> Option<u64> {
        if self.p < 5 {
            return None;
        }
        let group = ShortCurve::from(self);
        let p = self.p;
        let width = isqrt(4 * p);
        let (lo, hi) = (p + 1 - width, p + 1 + width);
        let mut rng = ChaCha8Rng::seed_from_u64(p ^ group.a.rotate_left(17) ^ group.b.rotate_left(41));
        let mut l = 1u64;
        for _ in 0..BSGS_SAMPLES {
            let pt = group.random_point(&mut rng);
            let order = group.point_order(pt, lo, hi);
            l = lcm(l, order);
            let first = lo.div_ceil(l) * l;
            if first + l > hi {
                debug_assert!(first <= hi);
                return Some(first);
            }
        }
        None
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Number of projective points on `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
/// over `F_p`, singular or not.
pub(crate) fn count_cubic_points(p: u64, a: &[u64; 5]) -> u64 {
    if p == 2 {
        return count_cubic_points_enumerate(p, a);
    }
    let [a1, a2, a3, a4, a6] = *a;
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    let m = |x, y| mul_mod(x, y, p);
    let b2 = add_mod(m(a1, a1), m(4, a2), p);
    let b4 = add_mod(m(2, a4), m(a1, a3), p);
    let b6 = add_mod(m(a3, a3), m(4, a6), p);
    let lin = m(2, b4);

    // Horner: ((4x + b2)x + 2b4)x + b6
    let cubic = |x| add_mod(m(add_mod(m(add_mod(m(4, x), b2, p), x), lin, p), x), b6, p);
    let mut total: i64 = 0;
    if p <= SQUARE_TABLE_LIMIT {
        let mut is_square = vec![false; p as usize];
        let mut sq = 0u64;
        for i in 1..=(p - 1) / 2 {
            // i^2 = (i - 1)^2 + 2i - 1
            sq = wrap(sq + 2 * i - 1, p);
            is_square[sq as usize] = true;
        }
        // walk the cubic by finite differences; the third difference is 24
        let (f0, f1, f2) = (cubic(0), cubic(1 % p), cubic(2 % p));
        let (mut g, mut d1, mut d2) = (f0, sub_mod(f1, f0, p), add_mod(sub_mod(f2, m(2, f1), p), f0, p));
        let d3 = 24 % p;
        for _ in 0..p {
            if g != 0 {
                total += if is_square[g as usize] { 1 } else { -1 };
            }
            g = wrap(g + d1, p);
            d1 = wrap(d1 + d2, p);
            d2 = wrap(d2 + d3, p);
        }
    } else {
        for x in 0..p {
            total += legendre(cubic(x), p) as i64;
        }
    }
    (p as i64 + 1 + total) as u64
}

#[inline]
fn wrap(x: u64, p: u64) -> u64 {
    if x >= p {
        x - p
    } else {
        x
    }
}

fn count_cubic_points_enumerate(p: u64, a: &[u64; 5]) -> u64 {
    let [a1, a2, a3, a4, a6] = *a;
    let m = |x, y| mul_mod(x, y, p);
    let mut count = 1;
    for x in 0..p {
        let rhs = add_mod(add_mod(m(m(x, x), add_mod(x, a2, p)), m(a4, x), p), a6, p);
        for y in 0..p {
            let lhs = add_mod(m(y, y), add_mod(m(m(a1, x), y), m(a3, y), p), p);
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}

type Point = Option<(u64, u64)>;

/// `y^2 = x^3 + a x + b` over `F_p`, `p >= 5`, with affine group law.
struct ShortCurve {
    p: u64,
    a: u64,
    b: u64,
}

impl From<&FiniteCurve> for ShortCurve {
    fn from(c: &FiniteCurve) -> Self {
        let (a, b) = c.short_model();
        ShortCurve { p: c.p, a, b }
    }
}

impl ShortCurve {
    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        add_mod(mul_mod(add_mod(mul_mod(x, x, p), self.a, p), x, p), self.b, p)
    }

    fn random_point(&self, rng: &mut ChaCha8Rng) -> Point {
        loop {
            let x = rng.random_range(0..self.p);
            let r = self.rhs(x);
            if r == 0 {
                return Some((x, 0));
            }
            if legendre(r, self.p) == 1 {
                let y = sqrt_mod(r, self.p).expect("residue has a root");
                let y = if rng.random::<bool>() { y } else { self.p - y };
                return Some((x, y));
            }
        }
    }

    fn neg(&self, pt: Point) -> Point {
        pt.map(|(x, y)| (x, if y == 0 { 0 } else { self.p - y }))
    }

    fn add(&self, s: Point, t: Point) -> Point {
        let p = self.p;
        let ((x1, y1), (x2, y2)) = match (s, t) {
            (None, q) | (q, None) => return q,
            (Some(a), Some(b)) => (a, b),
        };
        let lambda = if x1 == x2 {
            if add_mod(y1, y2, p) == 0 {
                return None;
            }
            let num = add_mod(mul_mod(3, mul_mod(x1, x1, p), p), self.a, p);
            mul_mod(num, inv_mod(mul_mod(2, y1, p), p), p)
        } else {
            mul_mod(sub_mod(y2, y1, p), inv_mod(sub_mod(x2, x1, p), p), p)
        };
        let x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p), x1, p), x2, p);
        let y3 = sub_mod(mul_mod(lambda, sub_mod(x1, x3, p), p), y1, p);
        Some((x3, y3))
    }

    fn mul(&self, mut k: u64, pt: Point) -> Point {
        let mut acc = None;
        let mut base = pt;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Exact order of `pt`, given that the group order lies in `[lo, hi]`.
    fn point_order(&self, pt: Point, lo: u64, hi: u64) -> u64 {
        let mut n = self.annihilator_in(pt, lo, hi);
        for (q, _) in factor_u64(n) {
            while n % q == 0 && self.mul(n / q, pt).is_none() {
                n /= q;
            }
        }
        n
    }

    /// Some `n >= lo` with `n * pt = O`, searched as `lo + i m + j`.
    fn annihilator_in(&self, pt: Point, lo: u64, hi: u64) -> u64 {
        let m = isqrt(hi - lo) + 1;
        let mut baby: HashMap<Point, u64> = HashMap::with_capacity(m as usize);
        let mut cur = None;
        for j in 0..m {
            baby.entry(cur).or_insert(j);
            cur = self.add(cur, pt);
        }
        let giant = self.mul(m, pt);
        let mut t = self.mul(lo, pt);
        let mut i = 0u64;
        loop {
            if let Some(&j) = baby.get(&self.neg(t)) {
                return lo + i * m + j;
            }
            t = self.add(t, giant);
            i += 1;
            assert!(i <= m + 1, "no annihilator in the Hasse interval");
        }
    }
}

/// Check a point-count claim against the group structure: `n * P = O` for
/// every sampled `P`. Used by tests as a cheap sanity oracle.
#[cfg(test)]
pub(crate) fn kills_random_points(c: &FiniteCurve, n: u64, samples: usize) -> bool {
    let g = ShortCurve::from(c);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..samples).all(|_| g.mul(n, g.random_point(&mut rng)).is_none())
}
