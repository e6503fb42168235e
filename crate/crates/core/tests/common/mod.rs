//! Reference implementations used as oracles. Deliberately naive and
//! independent of the library code paths they check.
#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture present")
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn is_prime_naive(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Projective points of `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over `F_p`,
/// by trying every pair. Coefficients may be negative.
pub fn count_points_naive(a: [i64; 5], p: u64) -> u64 {
    let p = p as i128;
    let r = |x: i128| x.rem_euclid(p);
    let [a1, a2, a3, a4, a6] = a.map(|c| c as i128);
    let mut n = 1;
    for x in 0..p {
        let rhs = r(x * x * x + a2 * x * x + a4 * x + a6);
        for y in 0..p {
            if r(y * y + a1 * x * y + a3 * y) == rhs {
                n += 1;
            }
        }
    }
    n
}

pub fn discriminant_naive(a: [i64; 5]) -> i128 {
    let [a1, a2, a3, a4, a6] = a.map(|c| c as i128);
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * det_cofactor(&minor);
    }
    total
}

pub fn to_i128(m: &extcong::modulus::matrix::IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| i128::try_from(x).expect("small entries")).collect()).collect()
}

/// Whether `v ∈ span_Z(gens) + m Z^d`: echelonize the generators together
/// with `m e_i` by Euclid's algorithm on columns, then reduce `v`.
pub fn in_lattice_plus_mz(gens: &[Vec<i64>], v: &[i64], m: i64) -> bool {
    let d = v.len();
    let mut rows: Vec<Vec<i128>> = gens.iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
    for i in 0..d {
        let mut e = vec![0i128; d];
        e[i] = m as i128;
        rows.push(e);
    }
    let mut echelon: Vec<Vec<i128>> = Vec::new();
    let mut rest = rows;
    for c in 0..d {
        // gcd-reduce column c among the remaining rows
        loop {
            let mut nz: Vec<usize> = (0..rest.len()).filter(|&i| rest[i][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| rest[i][c].abs());
            let piv = nz[0];
            for &i in &nz[1..] {
                let q = rest[i][c] / rest[piv][c];
                let pr = rest[piv].clone();
                for (x, y) in rest[i].iter_mut().zip(&pr) {
                    *x -= q * y;
                }
            }
        }
        if let Some(i) = (0..rest.len()).find(|&i| rest[i][c] != 0) {
            echelon.push(rest.remove(i));
        } else {
            echelon.push(vec![0; d]);
        }
    }
    let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for (c, row) in echelon.iter().enumerate() {
        if row[c] == 0 {
            if w[c] != 0 {
                return false;
            }
            continue;
        }
        if w[c] % row[c] != 0 {
            return false;
        }
        let q = w[c] / row[c];
        for (x, y) in w.iter_mut().zip(row) {
            *x -= q * y;
        }
    }
    w.iter().all(|&x| x == 0)
}

/// `a_n` of the newform of a curve with the given minimal model by brute
/// force: traces from naive counts, Hecke relations by definition.
pub fn newform_coefficient_naive(a: [i64; 5], level: u64, n: u64) -> i64 {
    let mut result = 1i64;
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            let ap = p as i64 + 1 - count_points_naive(a, p) as i64;
            let apk = if level % p == 0 {
                ap.pow(k)
            } else {
                let (mut prev, mut cur) = (1i64, ap);
                for _ in 1..k {
                    (prev, cur) = (cur, ap * cur - p as i64 * prev);
                }
                cur
            };
            result *= apk;
        }
        p += 1;
    }
    result
}

fn pow_mod_naive(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `a_p` by Euler's criterion on the discriminant of the quadratic in `y`;
/// `O(p log p)`, odd `p` only.
pub fn trace_by_euler_criterion(a: [i64; 5], p: u64) -> i64 {
    assert!(p % 2 == 1);
    let pm = p as i128;
    let [a1, a2, a3, a4, a6] = a.map(|c| c as i128);
    let mut sum = 0i64;
    for x in 0..pm {
        let lin = a1 * x + a3;
        let rhs = (x * x % pm * x + a2 * x % pm * x + a4 * x + a6).rem_euclid(pm);
        let d = (lin * lin + 4 * rhs).rem_euclid(pm) as u128;
        if d != 0 {
            sum += if pow_mod_naive(d, (p as u128 - 1) / 2, p as u128) == 1 { 1 } else { -1 };
        }
    }
    -sum
}
