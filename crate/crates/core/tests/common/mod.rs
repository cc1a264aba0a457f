//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use polargerm::ring::{rat, Monomial, Polynomial, Rational, Ring};
use rand::Rng;

/// All exponent vectors in `n` variables of total degree `< d`, graded.
pub fn monomials_below(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(n, d - 1, &mut Vec::new(), &mut out);
    }
    out.sort_by_key(|e| e.iter().sum::<u32>());
    out
}

/// Rank of a set of sparse rational rows by Gaussian elimination.
pub fn rank(rows: Vec<BTreeMap<usize, Rational>>) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, Rational>> = HashMap::new();
    for mut row in rows {
        while let Some((&col, _)) = row.iter().next() {
            let Some(p) = pivots.get(&col) else {
                let lead = row[&col].clone();
                for v in row.values_mut() {
                    *v = &*v / &lead;
                }
                pivots.insert(col, row);
                break;
            };
            let c = row[&col].clone();
            for (k, v) in p {
                let e = row.entry(*k).or_insert_with(Rational::zero);
                *e -= &c * v;
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
    }
    pivots.len()
}

/// `dim K[x]/(I + m^d)` computed by linear algebra on truncated multiples.
pub fn truncated_quotient_dim(gens: &[Polynomial], n: usize, d: u32) -> usize {
    let cols = monomials_below(n, d);
    let index: HashMap<&[u32], usize> = cols.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let Some(ord) = g.order() else { continue };
        for shift in cols.iter().filter(|e| e.iter().sum::<u32>() + ord < d) {
            let mut row = BTreeMap::new();
            for (m, c) in g.terms() {
                let e: Vec<u32> = m.exponents().iter().zip(shift).map(|(a, b)| a + b).collect();
                if let Some(&i) = index.get(e.as_slice()) {
                    row.insert(i, c.clone());
                }
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    cols.len() - rank(rows)
}

/// Length of the local algebra `O/I` at the origin, found as the stable value
/// of `dim K[x]/(I + m^d)`. Once two consecutive truncations agree,
/// `m^d ⊆ I + m^(d+1)` and Nakayama gives `m^d ⊆ I` locally. `None` if no
/// stabilization happens up to `max_d`.
pub fn local_length_oracle(gens: &[Polynomial], max_d: u32) -> Option<u64> {
    let n = gens.first()?.ring().nvars();
    let mut prev = truncated_quotient_dim(gens, n, 1);
    for d in 2..=max_d {
        let cur = truncated_quotient_dim(gens, n, d);
        if cur == prev {
            return Some(cur as u64);
        }
        prev = cur;
    }
    None
}

pub fn partials(g: &Polynomial) -> Vec<Polynomial> {
    (0..g.ring().nvars()).map(|i| g.derivative_at(i)).collect()
}

pub fn milnor_oracle(g: &Polynomial, max_d: u32) -> Option<u64> {
    local_length_oracle(&partials(g), max_d)
}

/// Random nonzero polynomial with `terms` terms of total degree in
/// `min_deg..=max_deg` before cancellation.
pub fn random_poly<R: Rng>(rng: &mut R, ring: &Arc<Ring>, terms: usize, min_deg: u32, max_deg: u32) -> Polynomial {
    loop {
        let p = random_terms(rng, ring, terms.max(1), min_deg, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_terms<R: Rng>(rng: &mut R, ring: &Arc<Ring>, terms: usize, min_deg: u32, max_deg: u32) -> Polynomial {
    let n = ring.nvars();
    let mut out = Polynomial::zero(ring);
    for _ in 0..terms {
        let deg = rng.gen_range(min_deg..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = loop {
            let c = rng.gen_range(-4i64..=4);
            if c != 0 {
                break c;
            }
        };
        out = &out + &Polynomial::monomial(ring, Monomial::new(e), rat(c));
    }
    out
}

/// Random integer matrix with determinant ±1, built from elementary moves.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        if rng.gen_bool(0.5) {
            a[0][0] = -1;
        }
        return a;
    }
    for _ in 0..2 * n + 2 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        match rng.gen_range(0..3) {
            0 => {
                let c = rng.gen_range(-2i64..=2);
                let src = a[j].clone();
                for (x, v) in a[i].iter_mut().zip(src) {
                    *x += c * v;
                }
            }
            1 => a.swap(i, j),
            _ => a[i].iter_mut().for_each(|v| *v = -*v),
        }
    }
    a
}

pub fn determinant(a: &[Vec<i64>]) -> Rational {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            let pivot_row = m[c].clone();
            for (x, v) in m[r].iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * v;
            }
        }
    }
    det
}

/// `f(A x)`.
pub fn linear_change(f: &Polynomial, a: &[Vec<i64>]) -> Polynomial {
    let ring = f.ring();
    let images: Vec<Polynomial> = a
        .iter()
        .map(|row| {
            row.iter().enumerate().fold(Polynomial::zero(ring), |acc, (j, &c)| {
                &acc + &Polynomial::monomial(ring, Monomial::var(ring.nvars(), j), rat(c))
            })
        })
        .collect();
    f.substitute(&images).expect("images live in the same ring")
}

pub struct CorpusGerm {
    pub vars: &'static [&'static str],
    pub f: &'static str,
    pub t_independent: bool,
}

const TXY: &[&str] = &["t", "x", "y"];
const TXYZ: &[&str] = &["t", "x", "y", "z"];

/// Germs `(f, t)` exercised by the property suite, besides the family grid.
pub fn corpus() -> Vec<CorpusGerm> {
    let g = |vars, f, t_independent| CorpusGerm { vars, f, t_independent };
    vec![
        g(TXY, "y^2 - x^3 + t*x", false),
        g(TXY, "y^2 + x^2*(x - t)", false),
        g(TXY, "y^2 - t*x^2", false),
        g(TXY, "y^2 - x^3 + t^2*x", false),
        g(TXY, "x^3 + y^3 + t*x*y", false),
        g(TXY, "y^2 - x^4 + t*x^2", false),
        g(TXY, "x^2 + y^2 + t*x", false),
        g(TXY, "t^2*x + y^2", false),
        g(TXY, "x*y + t*x^2 + y^3", false),
        g(TXY, "y^2 - x^5 + t*x^3 + t^2*x", false),
        g(TXYZ, "x^2 + y^2 + z^3 + t*z", false),
        g(TXYZ, "x*y*z + t*x^2 + y^3 + z^3", false),
        g(TXY, "y^2 - x^3", true),
        g(TXY, "x^2 + y^2", true),
        g(TXY, "x^3 + y^3", true),
        g(TXY, "x^2*y + y^4", true),
        g(TXYZ, "x^2 + y^3 + z^4", true),
        g(TXYZ, "x*y + z^3", true),
    ]
}
