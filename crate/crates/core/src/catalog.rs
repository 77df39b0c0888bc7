//! Simple and unimodal corank-1 germs `C^3 -> C^4` with known image Milnor
//! numbers and Milnor fibre Euler characteristics.
//!
//! Sign choices in the classical normal forms are all taken to be `+`; over
//! the complex numbers the other choices are equivalent by rescaling. Moduli
//! `a, b, c` default to `(2, 3, 5)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiple_points::MapGerm;
use crate::poly::{rat, Rational};

pub const DEFAULT_MODULI: [i64; 3] = [2, 3, 5];
pub const ALTERNATE_MODULI: [i64; 3] = [7, 11, 13];

const VARS: [&str; 3] = ["x", "y", "z"];

type Params = BTreeMap<String, Rational>;

#[derive(Clone, Copy, Debug)]
enum Shape {
    A,
    D,
    E6,
    E7,
    E8,
    B,
    C,
    F4,
    P1,
    P2,
    P3,
    P41,
    P4,
    Pk,
    Q,
    R,
    S,
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

/// One row of the catalog.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Integer parameters (`k`, `j`), in display order.
    pub params: &'static [&'static str],
    /// Moduli (`a`, `b`, `c`) used by this entry.
    pub moduli: &'static [&'static str],
    pub constraint: &'static str,
    pub mu_i_formula: &'static str,
    pub neg_chi_formula: &'static str,
    pub note: Option<&'static str>,
    shape: Shape,
}

const fn entry(
    name: &'static str,
    params: &'static [&'static str],
    moduli: &'static [&'static str],
    constraint: &'static str,
    mu_i_formula: &'static str,
    neg_chi_formula: &'static str,
    shape: Shape,
) -> CatalogEntry {
    CatalogEntry {
        name,
        params,
        moduli,
        constraint,
        mu_i_formula,
        neg_chi_formula,
        note: None,
        shape,
    }
}

const K: &[&str] = &["k"];
const JK: &[&str] = &["j", "k"];
const NONE: &[&str] = &[];

pub static CATALOG: &[CatalogEntry] = &[
    entry("A_k", K, NONE, "k >= 1", "k", "3k-2", Shape::A),
    entry("D_k", K, NONE, "k >= 4", "k", "3k-2", Shape::D),
    entry("E_6", NONE, NONE, "", "6", "16", Shape::E6),
    entry("E_7", NONE, NONE, "", "7", "19", Shape::E7),
    entry("E_8", NONE, NONE, "", "8", "22", Shape::E8),
    entry("B_k", K, NONE, "k >= 2", "k", "2k-1", Shape::B),
    entry("C_k", K, NONE, "k >= 3", "k", "3k-3", Shape::C),
    entry("F_4", NONE, NONE, "", "4", "8", Shape::F4),
    entry("P_1", NONE, NONE, "", "1", "3", Shape::P1),
    entry("P_2", NONE, NONE, "", "2", "7", Shape::P2),
    entry("P_3^k", K, NONE, "k >= 2", "k+2", "3k+8", Shape::P3),
    CatalogEntry {
        note: Some(
            "the published normal form lists the first component as z, which is not a \
             corank-1 normal form; the coordinate x is used instead",
        ),
        ..entry("P_4^1", NONE, NONE, "", "5", "18", Shape::P41)
    },
    entry("P_4", NONE, NONE, "", "5", "18", Shape::P4),
    entry(
        "P_k",
        K,
        NONE,
        "k >= 1, k not divisible by 3",
        "(k+1)(k+2)/6",
        "(k^2+5k)/2",
        Shape::Pk,
    ),
    entry("Q_k", K, NONE, "k >= 2", "k", "3k", Shape::Q),
    entry("R_k", K, NONE, "k >= 3", "k+1", "2k+6", Shape::R),
    entry(
        "S_{j,k}",
        JK,
        NONE,
        "j >= 1, k >= 2",
        "k+j+1",
        "3(k+j)+5",
        Shape::S,
    ),
    entry("I", NONE, &["a", "b"], "", "6", "19", Shape::I),
    entry("II", NONE, &["a", "b", "c"], "", "9", "30", Shape::II),
    entry("III", NONE, &["a"], "", "6", "19", Shape::III),
    entry("IV", NONE, &["a"], "", "6", "19", Shape::IV),
    entry("V", NONE, &["a"], "", "6", "22", Shape::V),
    entry("VI", NONE, &["a"], "", "6", "19", Shape::VI),
    entry("VII", NONE, &["a"], "", "6", "19", Shape::VII),
    entry("VIII", NONE, &["a", "b"], "", "8", "24", Shape::VIII),
];

/// An instantiated catalog row.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogGerm {
    pub name: String,
    pub entry: &'static str,
    pub params: BTreeMap<String, String>,
    pub vars: Vec<String>,
    pub components: Vec<String>,
    pub expected_mu_i: i64,
    pub expected_neg_chi: i64,
    pub note: Option<&'static str>,
    #[serde(skip)]
    pub germ: MapGerm,
}

fn int_param(params: &Params, name: &str) -> Result<i64> {
    let v = params
        .get(name)
        .ok_or_else(|| Error::BadParams(format!("missing parameter {name}")))?;
    if !v.is_integer() {
        return Err(Error::BadParams(format!(
            "parameter {name} must be an integer, got {v}"
        )));
    }
    i64::try_from(v.to_integer())
        .ok()
        .filter(|k| (0..=200).contains(k))
        .ok_or_else(|| Error::BadParams(format!("parameter {name} = {v} out of range")))
}

fn check(cond: bool, entry: &CatalogEntry, shown: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::BadParams(format!(
            "{} requires {}, got {shown}",
            entry.name, entry.constraint
        )))
    }
}

fn modulus(params: &Params, name: &str) -> String {
    format!("({})", params[name])
}

impl CatalogEntry {
    pub fn is_family(&self) -> bool {
        !self.params.is_empty()
    }

    /// Instantiates the entry. Integer parameters are required; moduli
    /// default to [`DEFAULT_MODULI`].
    pub fn instantiate(&self, given: &BTreeMap<String, Rational>) -> Result<CatalogGerm> {
        for key in given.keys() {
            if !self.params.contains(&key.as_str()) && !self.moduli.contains(&key.as_str()) {
                return Err(Error::BadParams(format!(
                    "{} has no parameter {key}",
                    self.name
                )));
            }
        }
        let mut params = given.clone();
        for (m, d) in ["a", "b", "c"].iter().zip(DEFAULT_MODULI) {
            if self.moduli.contains(m) {
                params.entry(m.to_string()).or_insert_with(|| rat(d));
            }
        }
        let k = if self.params.contains(&"k") {
            int_param(&params, "k")?
        } else {
            0
        };
        let j = if self.params.contains(&"j") {
            int_param(&params, "j")?
        } else {
            0
        };
        let ks = format!("k = {k}");
        let z2 = || "z^2".to_string();
        let (p, q, mu_i, neg_chi) = match self.shape {
            Shape::A => {
                check(k >= 1, self, &ks)?;
                (z2(), format!("z*(z^2+x^2+y^{})", k + 1), k, 3 * k - 2)
            }
            Shape::D => {
                check(k >= 4, self, &ks)?;
                (z2(), format!("z*(z^2+x^2*y+y^{})", k - 1), k, 3 * k - 2)
            }
            Shape::E6 => (z2(), "z*(z^2+x^3+y^4)".into(), 6, 16),
            Shape::E7 => (z2(), "z*(z^2+x^3+x*y^3)".into(), 7, 19),
            Shape::E8 => (z2(), "z*(z^2+x^3+y^5)".into(), 8, 22),
            Shape::B => {
                check(k >= 2, self, &ks)?;
                (z2(), format!("z*(x^2+y^2+z^{})", 2 * k), k, 2 * k - 1)
            }
            Shape::C => {
                check(k >= 3, self, &ks)?;
                (z2(), format!("z*(x^2+y*z^2+y^{k})"), k, 3 * k - 3)
            }
            Shape::F4 => (z2(), "z*(x^2+y^3+z^4)".into(), 4, 8),
            Shape::P1 => ("y*z+z^4".into(), "x*z+z^3".into(), 1, 3),
            Shape::P2 => ("y*z+z^5".into(), "x*z+z^3".into(), 2, 7),
            Shape::P3 => {
                check(k >= 2, self, &ks)?;
                (
                    format!("y*z+z^6+z^{}", 3 * k + 2),
                    "x*z+z^3".into(),
                    k + 2,
                    3 * k + 8,
                )
            }
            Shape::P41 => ("y*z+z^7+z^8".into(), "x*z+z^3".into(), 5, 18),
            Shape::P4 => ("y*z+z^7".into(), "x*z+z^3".into(), 5, 18),
            Shape::Pk => {
                check(k >= 1 && k % 3 != 0, self, &ks)?;
                (
                    format!("y*z+z^{}", k + 3),
                    "x*z+z^3".into(),
                    (k + 1) * (k + 2) / 6,
                    (k * k + 5 * k) / 2,
                )
            }
            Shape::Q => {
                check(k >= 2, self, &ks)?;
                ("x*z+y*z^2".into(), format!("z^3+y^{k}*z"), k, 3 * k)
            }
            Shape::R => {
                check(k >= 3, self, &ks)?;
                (
                    "x*z+z^3".into(),
                    format!("y*z^2+z^4+z^{}", 2 * k - 1),
                    k + 1,
                    2 * k + 6,
                )
            }
            Shape::S => {
                check(j >= 1 && k >= 2, self, &format!("j = {j}, k = {k}"))?;
                (
                    format!("x*z+y^2*z^2+z^{}", 3 * j + 2),
                    format!("z^3+y^{k}*z"),
                    k + j + 1,
                    3 * (k + j) + 5,
                )
            }
            Shape::I => (
                format!("y*z+x*z^3+z^5+{}*z^7", modulus(&params, "a")),
                format!("x*z+z^4+{}*z^6", modulus(&params, "b")),
                6,
                19,
            ),
            Shape::II => (
                format!(
                    "y*z+x*z^3+{}*z^6+z^7+{}*z^8+{}*z^9",
                    modulus(&params, "a"),
                    modulus(&params, "b"),
                    modulus(&params, "c")
                ),
                "x*z+z^4".into(),
                9,
                30,
            ),
            Shape::III => (
                format!("y*z+z^5+z^6+{}*z^7", modulus(&params, "a")),
                "x*z+z^4".into(),
                6,
                19,
            ),
            Shape::IV => (
                format!("y*z+z^5+{}*z^7", modulus(&params, "a")),
                "x*z+z^4+z^6".into(),
                6,
                19,
            ),
            Shape::V => (
                format!("x*z+z^5+{}*y^3*z^2+y^4*z^2", modulus(&params, "a")),
                "z^3+y^2*z".into(),
                6,
                22,
            ),
            Shape::VI => (
                "x*z+z^3".into(),
                format!("y*z^2+z^5+z^6+{}*z^7", modulus(&params, "a")),
                6,
                19,
            ),
            Shape::VII => (
                "x*z+z^3".into(),
                format!("y^2*z+x*z^2+{}*z^4+z^5", modulus(&params, "a")),
                6,
                19,
            ),
            Shape::VIII => (
                format!(
                    "x*z+z^4+{}*z^6+{}*z^7",
                    modulus(&params, "a"),
                    modulus(&params, "b")
                ),
                "y*z^2+z^4+z^5".into(),
                8,
                24,
            ),
        };
        let germ = MapGerm::parse(&VARS, &["x", "y", p.as_str(), q.as_str()])?;
        let name = display_name(self, &params);
        Ok(CatalogGerm {
            name,
            entry: self.name,
            params: params
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
            vars: VARS.iter().map(|v| v.to_string()).collect(),
            components: germ.component_strings(),
            expected_mu_i: mu_i,
            expected_neg_chi: neg_chi,
            note: self.note,
            germ,
        })
    }
}

fn display_name(entry: &CatalogEntry, params: &Params) -> String {
    match entry.params {
        [] => entry.name.to_string(),
        ["k"] => entry.name.replacen('k', &params["k"].to_string(), 1),
        _ => format!("S_{{{},{}}}", params["j"], params["k"]),
    }
}

pub fn find_entry(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

/// Resolves a catalog reference: either an entry name (`A_k`, `E_6`) or a
/// concrete row such as `A_3`, `P_3^2` or `S_{1,2}`, which fixes the
/// parameters.
pub fn resolve(reference: &str) -> Result<(&'static CatalogEntry, Params)> {
    let reference = reference.trim();
    if let Some(e) = find_entry(reference) {
        return Ok((e, Params::new()));
    }
    let num = |s: &str| s.parse::<i64>().ok().filter(|v| *v >= 0);
    let unknown = || Error::UnknownEntry(reference.to_string());
    if let Some(rest) = reference.strip_prefix("P_3^") {
        let k = num(rest).ok_or_else(unknown)?;
        return Ok((
            find_entry("P_3^k").unwrap(),
            Params::from([("k".to_string(), rat(k))]),
        ));
    }
    if let Some(rest) = reference
        .strip_prefix("S_{")
        .and_then(|r| r.strip_suffix('}'))
    {
        let (j, k) = rest.split_once(',').ok_or_else(unknown)?;
        let (j, k) = (
            num(j.trim()).ok_or_else(unknown)?,
            num(k.trim()).ok_or_else(unknown)?,
        );
        return Ok((
            find_entry("S_{j,k}").unwrap(),
            Params::from([("j".to_string(), rat(j)), ("k".to_string(), rat(k))]),
        ));
    }
    let (base, idx) = reference.split_once('_').ok_or_else(unknown)?;
    let k = num(idx).ok_or_else(unknown)?;
    let family = find_entry(&format!("{base}_k")).ok_or_else(unknown)?;
    Ok((family, Params::from([("k".to_string(), rat(k))])))
}

/// Instantiates a catalog reference with extra parameters (which may not
/// contradict the ones fixed by the reference).
pub fn catalog(reference: &str, extra: &BTreeMap<String, Rational>) -> Result<CatalogGerm> {
    let (entry, mut params) = resolve(reference)?;
    for (k, v) in extra {
        match params.get(k) {
            Some(existing) if existing != v => {
                return Err(Error::BadParams(format!(
                    "{reference} fixes {k} = {existing}, got {v}"
                )))
            }
            _ => {
                params.insert(k.clone(), v.clone());
            }
        }
    }
    entry.instantiate(&params)
}

/// Like [`catalog`], but silently ignores extra parameters the entry does not
/// take. Used for batch runs with a shared parameter set.
pub fn catalog_lenient(reference: &str, extra: &BTreeMap<String, Rational>) -> Result<CatalogGerm> {
    let (entry, _) = resolve(reference)?;
    let relevant = extra
        .iter()
        .filter(|(k, _)| entry.params.contains(&k.as_str()) || entry.moduli.contains(&k.as_str()))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    catalog(reference, &relevant)
}

/// Parses `name=value` parameter assignments; values are integers or
/// fractions.
pub fn parse_params<S: AsRef<str>>(items: &[S]) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for item in items {
        for piece in item.as_ref().split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = piece
                .split_once('=')
                .ok_or_else(|| Error::BadParams(format!("expected name=value, got `{piece}`")))?;
            let value: Rational = v
                .trim()
                .parse()
                .map_err(|_| Error::BadParams(format!("invalid value in `{piece}`")))?;
            out.insert(k.trim().to_string(), value);
        }
    }
    Ok(out)
}

/// Moduli assignment `(a, b, c)` as a parameter map.
pub fn moduli_params(values: [i64; 3]) -> BTreeMap<String, Rational> {
    ["a", "b", "c"]
        .iter()
        .zip(values)
        .map(|(n, v)| (n.to_string(), rat(v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn none() -> Params {
        Params::new()
    }

    #[test]
    fn a2_instance() {
        let g = catalog("A_k", &parse_params(&["k=2"]).unwrap()).unwrap();
        assert_eq!(g.name, "A_2");
        assert_eq!(g.components, vec!["x", "y", "z^2", "y^3*z + x^2*z + z^3"]);
        assert_eq!((g.expected_mu_i, g.expected_neg_chi), (2, 4));
        let alias = catalog("A_2", &none()).unwrap();
        assert_eq!(alias.germ, g.germ);
    }

    #[test]
    fn fixed_rows() {
        let g = catalog("E_6", &none()).unwrap();
        assert_eq!((g.expected_mu_i, g.expected_neg_chi), (6, 16));
        let s = catalog("S_{1,2}", &none()).unwrap();
        assert_eq!((s.expected_mu_i, s.expected_neg_chi), (4, 14));
        assert_eq!(s.name, "S_{1,2}");
        let p = catalog("P_3^2", &none()).unwrap();
        assert_eq!((p.expected_mu_i, p.expected_neg_chi), (4, 14));
        assert!(catalog("P_4^1", &none()).unwrap().note.is_some());
        let p5 = catalog("P_5", &none()).unwrap();
        assert_eq!((p5.expected_mu_i, p5.expected_neg_chi), (7, 25));
        assert_eq!(catalog("P_1", &none()).unwrap().entry, "P_1");
    }

    #[test]
    fn moduli() {
        let g = catalog("I", &none()).unwrap();
        assert_eq!(g.params["a"], "2");
        assert_eq!(g.params["b"], "3");
        let alt = catalog(
            "I",
            &moduli_params(ALTERNATE_MODULI)
                .into_iter()
                .take(2)
                .collect(),
        )
        .unwrap();
        assert_ne!(alt.germ, g.germ);
        let half = catalog("III", &parse_params(&["a=1/2"]).unwrap()).unwrap();
        assert!(half.components[2].contains("1/2*z^7"));
    }

    #[test]
    fn bad_references() {
        assert!(matches!(
            catalog("Z_3", &none()),
            Err(Error::UnknownEntry(_))
        ));
        assert!(matches!(
            catalog("nonsense", &none()),
            Err(Error::UnknownEntry(_))
        ));
        assert!(matches!(catalog("A_0", &none()), Err(Error::BadParams(_))));
        assert!(matches!(
            catalog("S_{1,1}", &none()),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(catalog("P_6", &none()), Err(Error::BadParams(_))));
        assert!(matches!(catalog("A_k", &none()), Err(Error::BadParams(_))));
        assert!(matches!(
            catalog("A_2", &parse_params(&["k=3"]).unwrap()),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            catalog("E_6", &parse_params(&["k=3"]).unwrap()),
            Err(Error::BadParams(_))
        ));
        assert!(catalog_lenient("E_6", &parse_params(&["k=3"]).unwrap()).is_ok());
        assert!(matches!(
            catalog("A_k", &parse_params(&["k=3/2"]).unwrap()),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn every_entry_instantiates() {
        for e in CATALOG {
            let mut p = none();
            for name in e.params {
                p.insert(name.to_string(), rat(if *name == "k" { 4 } else { 1 }));
            }
            let g = e.instantiate(&p).unwrap();
            assert_eq!(g.germ.source_dim(), 3, "{}", e.name);
        }
    }
}
