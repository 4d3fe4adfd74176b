//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's determinant, permanent, `W_p` or tangency code.

#![allow(dead_code)]

pub mod strategies;

use std::collections::BTreeMap;

use logdiff::poly::rat;
use logdiff::{Derivation, Monomial, Poly, Rational};
use num_traits::{One, Zero};

/// Nondecreasing `p`-tuples over `1..=l`, by filtering all `l^p` tuples.
pub fn wp_brute(l: usize, p: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..p {
        all = all
            .into_iter()
            .flat_map(|t| {
                (1..=l).map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    all.retain(|t| t.windows(2).all(|w| w[0] <= w[1]));
    all.sort();
    all
}

fn fact(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `Π_{i ∈ W_p} Π_k (count of k in i)!`.
pub fn gamma_brute(l: usize, p: usize) -> Rational {
    let mut g = Rational::one();
    for t in wp_brute(l, p) {
        for k in 1..=l {
            let c = t.iter().filter(|&&x| x == k).count();
            g *= Rational::from_integer(fact(c).into());
        }
    }
    g
}

pub fn binom(n: usize, k: usize) -> u32 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u32
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (perm, sign) in permutations(n - 1) {
        // insert n-1 at position k: sign flips once per element passed
        for k in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(k, n - 1);
            let passed = (perm.len() - k) as i64;
            out.push((p, if passed % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

pub fn perm_rat(m: &[Vec<Rational>]) -> Rational {
    permutations(m.len())
        .iter()
        .map(|(s, _)| s.iter().enumerate().map(|(i, &j)| m[i][j].clone()).product::<Rational>())
        .sum()
}

pub fn det_rat(m: &[Vec<Rational>]) -> Rational {
    permutations(m.len())
        .iter()
        .map(|(s, sign)| {
            let p: Rational = s.iter().enumerate().map(|(i, &j)| m[i][j].clone()).product();
            p * rat(*sign)
        })
        .sum()
}

pub fn perm_poly(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let mut acc = Poly::zero(nvars);
    for (s, _) in permutations(m.len()) {
        let mut p = Poly::one(nvars);
        for (i, &j) in s.iter().enumerate() {
            p = &p * &m[i][j];
        }
        acc = acc + p;
    }
    acc
}

pub fn det_poly(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let mut acc = Poly::zero(nvars);
    for (s, sign) in permutations(m.len()) {
        let mut p = Poly::constant(nvars, rat(sign));
        for (i, &j) in s.iter().enumerate() {
            p = &p * &m[i][j];
        }
        acc = acc + p;
    }
    acc
}

/// `M^(p)` straight from the definition: entry `(i, j)` is the permanent of
/// `(m[i_a][j_b])_{a,b}` over the brute-force `W_p`.
pub fn sym_power_brute(m: &[Vec<Rational>], p: usize) -> Vec<Vec<Rational>> {
    let idx = wp_brute(m.len(), p);
    idx.iter()
        .map(|i| {
            idx.iter()
                .map(|j| {
                    let sub: Vec<Vec<Rational>> = i
                        .iter()
                        .map(|&a| j.iter().map(|&b| m[a - 1][b - 1].clone()).collect())
                        .collect();
                    perm_rat(&sub)
                })
                .collect()
        })
        .collect()
}

/// Exponent vectors of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    if n == 0 {
        return if d == 0 { vec![Monomial::new(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for rest in monomials_of_degree(n - 1, d - e) {
            let mut v = vec![e];
            v.extend_from_slice(rest.exponents());
            out.push(Monomial::new(v));
        }
    }
    out
}

/// `f` with `x_k` replaced by the linear polynomial `sub`.
pub fn substitute(f: &Poly, k: usize, sub: &Poly) -> Poly {
    let n = f.nvars();
    let mut acc = Poly::zero(n);
    for (m, c) in f.terms() {
        let mut e = m.exponents().to_vec();
        let ek = e[k];
        e[k] = 0;
        let rest = Poly::monomial(n, Monomial::new(e), c.clone());
        acc = acc + &rest * &sub.pow(ek);
    }
    acc
}

/// `f` restricted to the hyperplane `Σ a_i x_i = 0`, written in the other
/// variables. Zero iff the form divides `f`.
pub fn restrict(f: &Poly, a: &[Rational]) -> Poly {
    let n = f.nvars();
    let k = a.iter().position(|c| !c.is_zero()).expect("nonzero form");
    let mut sub = Poly::zero(n);
    for (i, c) in a.iter().enumerate() {
        if i != k && !c.is_zero() {
            sub = sub + Poly::var(n, i).scale(&(-c / &a[k]));
        }
    }
    substitute(f, k, &sub)
}

/// Basis of the null space of `rows` (each of length `ncols`).
pub fn nullspace(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = Rational::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v *= inv.clone();
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p.clone() * f.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); ncols];
            v[fc] = Rational::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[pi][fc].clone();
            }
            v
        })
        .collect()
}

/// Basis of the homogeneous degree-`d` part of the module of derivations
/// tangent to the hyperplanes `forms`, by linear algebra on restrictions.
pub fn tangent_derivations(forms: &[Vec<Rational>], l: usize, d: u32) -> Vec<Derivation> {
    let monos = monomials_of_degree(l, d);
    let unknowns: Vec<(usize, Monomial)> = (0..l)
        .flat_map(|i| monos.iter().cloned().map(move |m| (i, m)))
        .collect();
    let mut equations: BTreeMap<(usize, Monomial), Vec<Rational>> = BTreeMap::new();
    for (u, (i, m)) in unknowns.iter().enumerate() {
        for (j, a) in forms.iter().enumerate() {
            // (m ∂_i)(α_j) = a_i m
            let image = Poly::monomial(l, m.clone(), a[*i].clone());
            for (mm, c) in restrict(&image, a).terms() {
                let row = equations
                    .entry((j, mm.clone()))
                    .or_insert_with(|| vec![Rational::zero(); unknowns.len()]);
                row[u] += c.clone();
            }
        }
    }
    nullspace(equations.into_values().collect(), unknowns.len())
        .into_iter()
        .map(|v| {
            let mut coeffs = vec![Poly::zero(l); l];
            for (c, (i, m)) in v.iter().zip(&unknowns) {
                if !c.is_zero() {
                    coeffs[*i] = &coeffs[*i] + &Poly::monomial(l, m.clone(), c.clone());
                }
            }
            Derivation::new(coeffs).unwrap()
        })
        .collect()
}
