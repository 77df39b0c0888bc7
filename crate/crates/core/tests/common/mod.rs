//! Shared strategies, corpora and independent oracles for the property
//! suites. Also compiled into the CLI acceptance harness.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use singchi_core::milnor::{icis_milnor, point_count};
use singchi_core::poly::{
    divided_difference, parse_poly, rat, Monomial, Polynomial, Rational, Ring, VarAssignment,
};
use singchi_core::standard_basis::{
    Colength, Engine, IdealPresentation, LocalOrdering, OrderingKind,
};

pub fn ring(vars: &[&str]) -> Ring {
    Ring::new(vars).unwrap()
}

pub fn ideal(vars: &[&str], gens: &[&str]) -> IdealPresentation {
    IdealPresentation::parse(&ring(vars), gens).unwrap()
}

// ---------------------------------------------------------------- corpus

/// Zero-dimensional ideals of the local ring. The colengths are not listed
/// here: tests obtain them from [`oracle_colength`].
pub const CORPUS: &[(&[&str], &[&str])] = &[
    (&["x"], &["x^7"]),
    (&["x"], &["x^3 + x^5"]),
    (&["x", "y"], &["x^2", "y^3"]),
    (&["x", "y"], &["5*x^4", "2*y"]),
    (&["x", "y"], &["2*x*y", "x^2 + 3*y^2"]),
    (&["x", "y"], &["3*x^2", "4*y^3"]),
    (&["x", "y"], &["3*x^2 + y^3", "3*x*y^2"]),
    (&["x", "y"], &["3*x^2", "5*y^4"]),
    (&["x", "y"], &["x*y", "x^2 + y^3"]),
    (&["x", "y"], &["x^2 + y^2", "x*y"]),
    (&["x", "y"], &["x^3 - y^2 + x^4", "x*y^2 + y^5"]),
    (&["x", "y"], &["x^2 + 1/2*y^3", "y^2 - 3/4*x^3"]),
    (&["x", "y"], &["x^3", "x*y", "y^4"]),
    (&["x", "y"], &["x^4 + x^2*y^2", "y^5 + x^3*y"]),
    (&["x", "y", "z"], &["x", "y", "z"]),
    (&["x", "y", "z"], &["x + y^2", "y + z^2", "z + x^2"]),
    (&["x", "y", "z"], &["x^2", "y^2", "z^2"]),
    (&["x", "y", "z"], &["3*x^2", "3*y^2", "3*z^2"]),
    (&["x", "y", "z"], &["2*x", "3*y^2", "4*z^3"]),
    (&["x", "y", "z"], &["2*x*y", "x^2 + 4*y^3", "2*z"]),
    (
        &["x", "y", "z"],
        &["3*x^2 + y*z", "3*y^2 + x*z", "3*z^2 + x*y"],
    ),
    (&["x", "y", "z"], &["x*y", "y*z", "x*z", "x^2 + y^2 + z^2"]),
    (&["x", "y", "z"], &["x^3 + y*z", "y^3 + x*z", "z^3 + x*y"]),
    (&["x", "y", "z"], &["x^2 + z^3", "y^2 - x*z", "z^4 + x*y"]),
    (&["x", "y", "z"], &["4*x^3", "4*y^3", "4*z^3"]),
];

pub fn corpus() -> Vec<IdealPresentation> {
    CORPUS.iter().map(|(v, g)| ideal(v, g)).collect()
}

/// Corpus members generated by as many equations as variables.
pub fn ci_corpus() -> Vec<IdealPresentation> {
    corpus()
        .into_iter()
        .filter(|i| i.gens().len() == i.ring().len())
        .collect()
}

// ---------------------------------------------------------------- oracle

fn monomials_below(nv: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nv {
        let mut next = Vec::new();
        for m in &out {
            let used: u32 = m.iter().sum();
            for e in 0..n.saturating_sub(used) {
                let mut m2 = m.clone();
                m2.push(e);
                next.push(m2);
            }
        }
        out = next;
    }
    out.retain(|m| m.iter().sum::<u32>() < n);
    out
}

/// Rank of a set of sparse rows by plain Gaussian elimination.
fn rank(rows: Vec<BTreeMap<usize, Rational>>) -> usize {
    let zero = rat(0);
    let mut pivots: HashMap<usize, BTreeMap<usize, Rational>> = HashMap::new();
    for mut row in rows {
        loop {
            row.retain(|_, c| *c != zero);
            let Some((&col, lead)) = row.iter().next() else {
                break;
            };
            match pivots.get(&col) {
                Some(p) => {
                    let factor = lead.clone();
                    for (c, v) in p {
                        let e = row.entry(*c).or_insert_with(|| rat(0));
                        *e = &*e - &(&factor * v);
                    }
                }
                None => {
                    let inv = rat(1) / lead.clone();
                    for v in row.values_mut() {
                        *v = &*v * &inv;
                    }
                    pivots.insert(col, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `dim O / (I + m^n)` by linear algebra on the monomial multiples of the
/// generators, truncated below degree `n`.
pub fn truncated_quotient_dim(ideal: &IdealPresentation, n: u32) -> usize {
    let nv = ideal.ring().len();
    let monos = monomials_below(nv, n);
    let index: HashMap<&[u32], usize> = monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let mut rows = Vec::new();
    for g in ideal.gens() {
        for m in &monos {
            let prod = g.mul_monomial(&Monomial::from_exponents(m.clone()), &rat(1));
            let row: BTreeMap<usize, Rational> = prod
                .terms()
                .filter_map(|(mono, c)| index.get(mono.exponents()).map(|&i| (i, c.clone())))
                .collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    monos.len() - rank(rows)
}

/// Colength of a zero-dimensional ideal, independent of the standard-basis
/// kernel: once `dim O/(I + m^n)` stops growing, `m^(n-1)` lies in `I` by
/// Nakayama and the value is exact. `None` when no stabilization happens
/// below `max_degree`.
pub fn oracle_colength(ideal: &IdealPresentation, max_degree: u32) -> Option<u64> {
    let mut prev = truncated_quotient_dim(ideal, 1);
    for n in 2..=max_degree {
        let d = truncated_quotient_dim(ideal, n);
        if d == prev {
            return Some(d as u64);
        }
        prev = d;
    }
    None
}

// ------------------------------------------------------------ strategies

/// Random polynomial in `ring` with terms of total degree in `degrees`.
pub fn arb_poly(
    ring: Ring,
    degrees: std::ops::RangeInclusive<u32>,
    max_terms: usize,
) -> impl Strategy<Value = Polynomial> {
    let nv = ring.len();
    let lo = *degrees.start();
    let hi = *degrees.end();
    let term = (prop::collection::vec(0..=hi, nv), -4i64..=4, 1i64..=3);
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(
            &ring,
            terms.into_iter().filter_map(|(mut e, n, d)| {
                let total: u32 = e.iter().sum();
                if total > hi {
                    // scale exponents down into range
                    let mut excess = total - hi;
                    for x in e.iter_mut() {
                        let cut = (*x).min(excess);
                        *x -= cut;
                        excess -= cut;
                    }
                }
                let total: u32 = e.iter().sum();
                (total >= lo && n != 0).then(|| {
                    (
                        Monomial::from_exponents(e),
                        Rational::new(n.into(), d.into()),
                    )
                })
            }),
        )
    })
}

/// Zero-dimensional ideal `(x_i^{a_i} + h_i)` with every `h_i` of order above
/// `max a_i`, plus optionally one more random generator of positive order.
/// Its leading ideal contains every `x_i^{a_i}`, so the colength is at most
/// `prod a_i`.
pub fn arb_zero_dim(nv: usize, extra: bool) -> impl Strategy<Value = IdealPresentation> {
    let names: Vec<String> = ["x", "y", "z"][..nv]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let ring = Ring::new(&names).unwrap();
    let max_a: u32 = if nv == 3 { 3 } else { 5 };
    let powers = prop::collection::vec(1..=max_a, nv);
    let r = ring.clone();
    powers.prop_flat_map(move |a| {
        let top = *a.iter().max().unwrap();
        let tails = prop::collection::vec(arb_poly(r.clone(), top + 1..=top + 2, 3), nv);
        let extra_gen = if extra {
            prop::option::of(arb_poly(r.clone(), 1..=3, 3)).boxed()
        } else {
            Just(None).boxed()
        };
        let r2 = r.clone();
        (Just(a), tails, extra_gen).prop_map(move |(a, tails, extra_gen)| {
            let mut gens: Vec<Polynomial> = a
                .iter()
                .zip(tails)
                .enumerate()
                .map(|(i, (&e, t))| &Polynomial::var_at(&r2, i).pow(e) + &t)
                .collect();
            if let Some(g) = extra_gen.filter(|g| !g.is_zero()) {
                gens.push(g);
            }
            IdealPresentation::new(&r2, gens).unwrap()
        })
    })
}

/// Random local coordinate change: unipotent linear part plus a quadratic
/// term, followed by a permutation of the variables.
pub fn coordinate_change(ring: &Ring, shear: &[i64], quad: i64, perm_seed: usize) -> VarAssignment {
    let vars = ring.vars();
    let n = vars.len();
    let mut order: Vec<usize> = (0..n).collect();
    if n > 0 {
        order.rotate_left(perm_seed % n);
    }
    let mut assign = VarAssignment::new(ring);
    let mut s = shear.iter().cycle();
    for i in 0..n {
        let mut image = Polynomial::var_at(ring, order[i]);
        for j in 0..i {
            let c = *s.next().unwrap_or(&0);
            image = &image + &Polynomial::var_at(ring, order[j]).scale(&rat(c));
        }
        if i == n - 1 && n > 1 {
            image = &image + &Polynomial::var_at(ring, order[0]).pow(2).scale(&rat(quad));
        }
        assign.set(&vars[i], image).unwrap();
    }
    assign
}

pub fn transform(ideal: &IdealPresentation, assign: &VarAssignment) -> IdealPresentation {
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.substitute(assign).unwrap())
        .collect();
    IdealPresentation::new(ideal.ring(), gens).unwrap()
}

// ------------------------------------------------------------ properties

pub type Check = Result<(), TestCaseError>;

pub fn finite(c: Colength) -> u64 {
    c.finite().expect("zero-dimensional ideal")
}

/// Colength is unchanged by permuting generators, switching between the two
/// local orderings, reordering variables, and local coordinate changes.
pub fn check_colength_invariance(
    ideal: &IdealPresentation,
    rotate: usize,
    shear: &[i64],
    quad: i64,
) -> Check {
    let engine = Engine::default();
    let base = finite(
        engine
            .colength(ideal)
            .map_err(|e| TestCaseError::fail(e.to_string()))?,
    );

    let mut gens = ideal.gens().to_vec();
    let len = gens.len();
    gens.rotate_left(rotate % len);
    gens.reverse();
    let shuffled = IdealPresentation::new(ideal.ring(), gens).unwrap();
    prop_assert_eq!(
        finite(engine.colength(&shuffled).unwrap()),
        base,
        "generator order"
    );

    let mut vars: Vec<String> = ideal.ring().vars().to_vec();
    vars.reverse();
    let ds_rev = Engine::default()
        .with_ordering(LocalOrdering::new(OrderingKind::NegDegLex).with_var_order(&vars));
    prop_assert_eq!(finite(ds_rev.colength(ideal).unwrap()), base, "ordering");

    let moved = transform(ideal, &coordinate_change(ideal.ring(), shear, quad, rotate));
    prop_assert_eq!(
        finite(engine.colength(&moved).unwrap()),
        base,
        "coordinates"
    );
    Ok(())
}

pub fn check_oracle(ideal: &IdealPresentation, max_degree: u32) -> Check {
    let engine = finite(Engine::default().colength(ideal).unwrap());
    if engine > 40 {
        return Ok(());
    }
    let oracle = oracle_colength(ideal, max_degree);
    prop_assert_eq!(oracle, Some(engine), "ideal {:?}", ideal.gen_strings());
    Ok(())
}

/// For a zero-dimensional complete intersection the Milnor fibre is a finite
/// set of points, so `μ + 1` equals the point count.
pub fn check_mu_plus_one(ideal: &IdealPresentation, seed: u64) -> Check {
    let engine = Engine::default();
    let points = point_count(&engine, ideal).unwrap();
    if points == 0 {
        return Ok(());
    }
    let mu = icis_milnor(&engine, ideal, seed).unwrap().mu;
    prop_assert_eq!(mu + 1, points);
    Ok(())
}

pub fn check_seed_independence(ideal: &IdealPresentation, seeds: [u64; 3]) -> Check {
    let engine = Engine::default();
    let mus: Vec<u64> = seeds
        .iter()
        .map(|&s| {
            icis_milnor(&engine, ideal, s)
                .map(|r| r.mu)
                .map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()
        .map_err(TestCaseError::fail)?;
    prop_assert!(
        mus.windows(2).all(|w| w[0] == w[1]),
        "mu per seed {:?}",
        mus
    );
    Ok(())
}

fn dd_ring() -> Ring {
    ring(&["x", "z"])
}

pub fn arb_dd_poly() -> impl Strategy<Value = Polynomial> {
    arb_poly(dd_ring(), 0..=5, 6)
}

fn common_ring() -> Ring {
    ring(&["x", "a", "b", "c", "d"])
}

fn dd(g: &Polynomial, args: &[&str]) -> Polynomial {
    divided_difference(g, "z", args)
        .unwrap()
        .to_ring(&common_ring())
        .unwrap()
}

/// Symmetry under permutations of the arguments.
pub fn check_dd_symmetry(g: &Polynomial, perm: usize) -> Check {
    let args = ["a", "b", "c"];
    let perms = [
        ["a", "b", "c"],
        ["a", "c", "b"],
        ["b", "a", "c"],
        ["b", "c", "a"],
        ["c", "a", "b"],
        ["c", "b", "a"],
    ];
    prop_assert_eq!(dd(g, &args), dd(g, &perms[perm % 6]));
    Ok(())
}

/// `(a_0 - a_j) g[a_0..a_j] = g[a_0..a_{j-1}] - g[a_1..a_j]`.
pub fn check_dd_telescoping(g: &Polynomial, j: usize) -> Check {
    let names = ["a", "b", "c", "d"];
    let j = 1 + j % 3;
    let args = &names[..=j];
    let r = common_ring();
    let diff = &Polynomial::var(&r, args[0]).unwrap() - &Polynomial::var(&r, args[j]).unwrap();
    let lhs = &diff * &dd(g, args);
    let rhs = &dd(g, &args[..j]) - &dd(g, &args[1..]);
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// `g[a, a] = g'(a)` and `g[a, a, a] = g''(a) / 2`.
pub fn check_dd_confluent(g: &Polynomial) -> Check {
    let r = common_ring();
    let at_a = |p: &Polynomial| {
        let work = dd_ring().extended(&["a"]);
        let assign = VarAssignment::new(&work)
            .with("z", Polynomial::var(&work, "a").unwrap())
            .unwrap();
        p.to_ring(&work)
            .unwrap()
            .substitute(&assign)
            .unwrap()
            .to_ring(&r)
            .unwrap()
    };
    let d1 = g.derivative("z").unwrap();
    let d2 = d1.derivative("z").unwrap();
    prop_assert_eq!(dd(g, &["a", "a"]), at_a(&d1));
    prop_assert_eq!(
        dd(g, &["a", "a", "a"]),
        at_a(&d2).scale(&Rational::new(1.into(), 2.into()))
    );
    Ok(())
}

/// Cross-check against the explicit Vandermonde formula
/// `g[a_0..a_j] = Σ_i g(a_i) / Π_{k≠i} (a_i - a_k)` at distinct rational points.
pub fn check_dd_vandermonde(g: &Polynomial, x: i64, points: &[i64]) -> Check {
    let mut pts: Vec<i64> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    prop_assume!(pts.len() >= 2);
    let names = ["a", "b", "c", "d"];
    let args: Vec<&str> = names[..pts.len()].to_vec();
    let value = |p: &Polynomial, assign: &[(&str, i64)]| -> Rational {
        let empty = Ring::new::<&str>(&[]).unwrap();
        let mut va = VarAssignment::new(&empty);
        for (v, c) in assign {
            if p.ring().contains(v) {
                va.set(v, Polynomial::constant(&empty, rat(*c))).unwrap();
            }
        }
        p.substitute(&va).unwrap().constant_term()
    };
    let mut expected = rat(0);
    for (i, &ai) in pts.iter().enumerate() {
        let mut denom = rat(1);
        for (k, &ak) in pts.iter().enumerate() {
            if k != i {
                denom = denom * rat(ai - ak);
            }
        }
        expected = expected + value(g, &[("x", x), ("z", ai)]) / denom;
    }
    let computed = divided_difference(g, "z", &args).unwrap();
    let mut assign: Vec<(&str, i64)> = vec![("x", x)];
    assign.extend(args.iter().copied().zip(pts.iter().copied()));
    prop_assert_eq!(value(&computed, &assign), expected);
    Ok(())
}

pub fn check_parse_roundtrip(p: &Polynomial) -> Check {
    let text = p.to_string();
    let back = parse_poly(&text, p.ring()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, p, "printed as {}", text);
    Ok(())
}

pub fn check_ring_axioms(a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Check {
    prop_assert_eq!(&(a + b), &(b + a));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
    prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
    prop_assert_eq!(&(&(a + b) * c), &(&(a * c) + &(b * c)));
    prop_assert!((a - a).is_zero());
    prop_assert_eq!(&(a * &Polynomial::one(a.ring())), a);
    Ok(())
}

pub fn arb_triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    let r = ring(&["x", "y", "z"]);
    (
        arb_poly(r.clone(), 0..=3, 5),
        arb_poly(r.clone(), 0..=3, 5),
        arb_poly(r, 0..=3, 5),
    )
}

// --------------------------------------------------------------- catalog

use singchi_core::catalog::{catalog, catalog_lenient, moduli_params, CatalogGerm};
use singchi_core::multiple_points::{dk_partition_ideal, Partition};

/// Catalog families with the parameter ranges used by randomized tests.
pub const FAMILIES: &[(&str, std::ops::RangeInclusive<i64>)] = &[
    ("A_k", 1..=6),
    ("D_k", 4..=7),
    ("B_k", 2..=5),
    ("C_k", 3..=6),
    ("P_3^k", 2..=4),
    ("P_k", 1..=5),
    ("Q_k", 2..=5),
    ("R_k", 3..=5),
];

pub const SINGLE_ROWS: &[&str] = &[
    "E_6", "E_7", "E_8", "F_4", "P_1", "P_2", "P_4^1", "P_4", "S_{1,2}", "S_{2,2}", "S_{1,3}", "I",
    "II", "III", "IV", "V", "VI", "VII", "VIII",
];

pub fn family_member(name: &str, k: i64) -> CatalogGerm {
    let params = BTreeMap::from([("k".to_string(), rat(k))]);
    catalog(name, &params).unwrap()
}

/// A random admissible catalog germ.
pub fn arb_catalog_germ() -> impl Strategy<Value = CatalogGerm> {
    let families = (0..FAMILIES.len()).prop_flat_map(|i| {
        let (name, range) = FAMILIES[i].clone();
        range.prop_filter_map("admissible", move |k| {
            let params = BTreeMap::from([("k".to_string(), rat(k))]);
            catalog(name, &params).ok()
        })
    });
    let singles = prop::sample::select(SINGLE_ROWS)
        .prop_map(|name| catalog_lenient(name, &moduli_params([2, 3, 5])).unwrap());
    prop_oneof![families, singles]
}

/// One of the four spaces entering the invariant tuple.
pub fn tuple_spaces() -> Vec<(usize, Partition)> {
    vec![
        (2, Partition::trivial(2)),
        (2, Partition::new(vec![2]).unwrap()),
        (3, Partition::trivial(3)),
        (3, Partition::new(vec![1, 2]).unwrap()),
    ]
}

/// The ideal of a random multiple point space of a random catalog germ.
pub fn arb_catalog_space() -> impl Strategy<Value = IdealPresentation> {
    (arb_catalog_germ(), 0usize..4).prop_map(|(g, s)| {
        let (k, p) = &tuple_spaces()[s];
        dk_partition_ideal(&g.germ, *k, p).unwrap()
    })
}
