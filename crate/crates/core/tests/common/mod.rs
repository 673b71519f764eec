//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use realtoric::{Fan, LatticeVector, ToricDivisor, UnimodularMap};

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Determinant by cofactor expansion along the first row.
fn det_cofactor(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det_cofactor(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: D_k is the gcd of all k×k
/// minors and d_k = D_k / D_{k-1}.
pub fn invariant_factors_by_minors(a: &[Vec<i64>], cols: usize) -> Vec<i128> {
    let rows = a.len();
    let mut factors = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| a[r][c] as i128).collect())
                    .collect();
                g = gcd(g, det_cofactor(&minor));
            }
        }
        if g == 0 {
            break;
        }
        factors.push(g / prev);
        prev = g;
    }
    factors
}

/// Invariant factors by plain elementary row and column operations in
/// i128: take the first nonzero entry as pivot, run Euclid on its row and
/// column, then patch divisibility by adding rows.
pub fn invariant_factors_by_elimination(a: &[Vec<i64>], cols: usize) -> Vec<i128> {
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .find(|&(r, c)| m[r][c] != 0)
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut changed = false;
            for r in t + 1..rows {
                while m[r][t] != 0 {
                    let q = m[r][t] / m[t][t];
                    for c in 0..cols {
                        m[r][c] -= q * m[t][c];
                    }
                    if m[r][t] != 0 {
                        m.swap(t, r);
                        changed = true;
                    }
                }
            }
            for c in t + 1..cols {
                while m[t][c] != 0 {
                    let q = m[t][c] / m[t][t];
                    for row in m.iter_mut() {
                        row[c] -= q * row[t];
                    }
                    if m[t][c] != 0 {
                        for row in m.iter_mut() {
                            row.swap(t, c);
                        }
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| m[r][c] % m[t][t] != 0));
            match bad {
                Some(r) => {
                    for c in 0..cols {
                        m[t][c] += m[r][c];
                    }
                }
                None => break,
            }
        }
        out.push(m[t][t].abs());
    }
    out
}

/// Rank by fraction-free Gaussian elimination: rows are combined by
/// cross-multiplication and then divided by their content.
pub fn rank_fraction_free(a: &[Vec<i64>], cols: usize) -> usize {
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            let (piv, x) = (m[rank][c], m[r][c]);
            if x == 0 {
                continue;
            }
            for j in 0..cols {
                m[r][j] = m[r][j] * piv - m[rank][j] * x;
            }
            let content = m[r].iter().fold(0, |g, &v| gcd(g, v));
            if content > 1 {
                for v in m[r].iter_mut() {
                    *v /= content;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Tiny deterministic generator for test data (64-bit LCG, high bits).
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed ^ 0x5DEECE66D)
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

pub fn random_matrix(rng: &mut TestRng, max_dim: usize, bound: i64) -> (Vec<Vec<i64>>, usize) {
    let rows = rng.range(1, max_dim as i64) as usize;
    let cols = rng.range(1, max_dim as i64) as usize;
    // Bias towards low rank now and then so the divisibility fix-up and
    // zero rows get exercised.
    let m: Vec<Vec<i64>> = if rng.next() % 4 == 0 && rows > 1 {
        let base: Vec<i64> = (0..cols).map(|_| rng.range(-bound, bound)).collect();
        (0..rows)
            .map(|_| {
                let k = rng.range(-2, 2);
                base.iter().map(|&x| (x * k).clamp(-bound, bound)).collect()
            })
            .collect()
    } else {
        (0..rows)
            .map(|_| (0..cols).map(|_| rng.range(-bound, bound)).collect())
            .collect()
    };
    (m, cols)
}

/// A random product of elementary unimodular matrices, entries kept small.
pub fn random_unimodular(rng: &mut TestRng) -> UnimodularMap {
    let mut m = [[1i64, 0], [0, 1]];
    for _ in 0..rng.range(1, 5) {
        let e = match rng.next() % 4 {
            0 => [[1, rng.range(-2, 2)], [0, 1]],
            1 => [[1, 0], [rng.range(-2, 2), 1]],
            2 => [[0, 1], [1, 0]],
            _ => [[-1, 0], [0, 1]],
        };
        m = [
            [
                e[0][0] * m[0][0] + e[0][1] * m[1][0],
                e[0][0] * m[0][1] + e[0][1] * m[1][1],
            ],
            [
                e[1][0] * m[0][0] + e[1][1] * m[1][0],
                e[1][0] * m[0][1] + e[1][1] * m[1][1],
            ],
        ];
    }
    UnimodularMap::new(m).expect("product of unimodular matrices")
}

/// a_i straight from the definition v_{i-1} + v_{i+1} = -a_i v_i.
pub fn self_intersections_oracle(rays: &[LatticeVector]) -> Vec<i64> {
    let d = rays.len();
    (0..d)
        .map(|i| {
            let (p, v, n) = (rays[(i + d - 1) % d], rays[i], rays[(i + 1) % d]);
            let s = (p.x + n.x, p.y + n.y);
            (-64..=64)
                .find(|&a| s == (-a * v.x, -a * v.y))
                .expect("self-intersection within search range")
        })
        .collect()
}

/// Cyclic equality up to rotation, optionally allowing reversal.
pub fn cyclic_eq(a: &[i64], b: &[i64], allow_reverse: bool) -> bool {
    let d = a.len();
    if d != b.len() {
        return false;
    }
    (0..d).any(|s| {
        (0..d).all(|i| a[i] == b[(i + s) % d])
            || (allow_reverse && (0..d).all(|i| a[i] == b[(s + d - i) % d]))
    })
}

/// Ample divisors on `fan` other than the constructed one: multiples,
/// translates and sums with it.
pub fn ample_variants(fan: &Fan, base: &ToricDivisor, rng: &mut TestRng) -> Vec<ToricDivisor> {
    let mut out = vec![base.clone()];
    for _ in 0..4 {
        let k = rng.range(1, 3);
        let u = LatticeVector::new(rng.range(-3, 3), rng.range(-3, 3));
        let scaled = ToricDivisor::new(base.coeffs.iter().map(|b| b * k).collect());
        out.push(scaled.translate(fan, u).unwrap());
    }
    for _ in 0..4 {
        let j = rng.range(0, fan.len() as i64 - 1) as usize;
        let mut coeffs = base.coeffs.clone();
        coeffs[j] += rng.range(1, 2);
        let candidate = ToricDivisor::new(coeffs);
        if realtoric::is_ample(fan, &candidate).unwrap() {
            out.push(candidate);
        }
    }
    out
}
