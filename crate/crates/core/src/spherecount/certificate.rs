use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use serde::{Serialize, Serializer};

use super::{classify_by_top_index, enumerate_decreasing_chains, CountTable, Result, SphereError};
use crate::vecpart::{build_pi, VectorPoset};
use crate::Budget;

/// Independent ways of counting the spheres.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CountMethod {
    /// Decreasing maximal chains, by filtering and by top-down generation.
    Enumerate,
    Recursion,
    /// `|mu(bottom, top)|`.
    Mobius,
    /// Top reduced GF(2) Betti number of the order complex.
    Homology,
    /// `|reduced Euler characteristic|` of the order complex.
    Euler,
}

impl CountMethod {
    pub const ALL: [CountMethod; 5] = [
        CountMethod::Enumerate,
        CountMethod::Recursion,
        CountMethod::Mobius,
        CountMethod::Homology,
        CountMethod::Euler,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Enumerate => "enumerate",
            CountMethod::Recursion => "recursion",
            CountMethod::Mobius => "mobius",
            CountMethod::Homology => "homology",
            CountMethod::Euler => "euler",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CountMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

fn decimal<S: Serializer, T: fmt::Display>(
    v: &Option<T>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => ser.serialize_str(&x.to_string()),
        None => ser.serialize_none(),
    }
}

fn decimal_list<S: Serializer>(
    v: &Option<Vec<BigUint>>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(xs) => ser.collect_seq(xs.iter().map(|x| x.to_string())),
        None => ser.serialize_none(),
    }
}

/// Results of the requested methods for one `(n, s)`. Counts are decimal
/// strings; a method that was not requested, or does not apply, is `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub s: usize,
    #[serde(serialize_with = "decimal")]
    pub enumerate: Option<BigUint>,
    #[serde(serialize_with = "decimal_list")]
    pub enumerate_by_top_index: Option<Vec<BigUint>>,
    #[serde(serialize_with = "decimal")]
    pub recursion: Option<BigUint>,
    #[serde(serialize_with = "decimal_list")]
    pub recursion_by_top_index: Option<Vec<BigUint>>,
    /// Signed `mu(bottom, top)`.
    #[serde(serialize_with = "decimal")]
    pub mobius: Option<BigInt>,
    /// Reduced Betti numbers starting at dimension -1.
    pub reduced_betti: Option<Vec<usize>>,
    #[serde(serialize_with = "decimal")]
    pub homology: Option<BigUint>,
    /// Signed reduced Euler characteristic.
    pub euler: Option<i64>,
    pub agree: bool,
    pub notes: Vec<String>,
}

impl Certificate {
    /// The agreed sphere count, if every method agrees and at least one ran.
    pub fn count(&self) -> Option<BigUint> {
        if !self.agree {
            return None;
        }
        self.values().into_iter().next().map(|(_, v)| v)
    }

    /// Sphere counts claimed by each method that ran, as absolute values.
    pub fn values(&self) -> Vec<(CountMethod, BigUint)> {
        let mut out = Vec::new();
        if let Some(v) = &self.enumerate {
            out.push((CountMethod::Enumerate, v.clone()));
        }
        if let Some(v) = &self.recursion {
            out.push((CountMethod::Recursion, v.clone()));
        }
        if let Some(v) = &self.mobius {
            out.push((CountMethod::Mobius, v.magnitude().clone()));
        }
        if let Some(v) = &self.homology {
            out.push((CountMethod::Homology, v.clone()));
        }
        if let Some(v) = self.euler {
            out.push((CountMethod::Euler, BigUint::from(v.unsigned_abs())));
        }
        out
    }
}

/// Runs `methods` for `(n, s)` and cross-checks them. Besides equal
/// magnitudes, the checks require `mu` and the Euler characteristic to have
/// sign `(-1)^n`, reduced homology to vanish below the top dimension, and the
/// per-index classes to agree.
pub fn certificate(
    n: usize,
    s: usize,
    budget: Budget,
    methods: &[CountMethod],
) -> Result<Certificate> {
    let wants = |m: CountMethod| methods.contains(&m);
    let mut cert = Certificate {
        n,
        s,
        enumerate: None,
        enumerate_by_top_index: None,
        recursion: None,
        recursion_by_top_index: None,
        mobius: None,
        reduced_betti: None,
        homology: None,
        euler: None,
        agree: true,
        notes: Vec::new(),
    };
    let mut table = CountTable::new();

    if wants(CountMethod::Recursion) {
        cert.recursion = Some(table.total(n, s));
        if n >= 2 {
            cert.recursion_by_top_index = Some(
                (1..=s)
                    .map(|i| table.by_index(n, s, i))
                    .collect::<Result<_>>()?,
            );
        }
    }
    if wants(CountMethod::Enumerate) {
        let chains = enumerate_decreasing_chains(n, s, budget)?;
        cert.enumerate = Some(BigUint::from(chains.len()));
        if n >= 2 {
            let classes = classify_by_top_index(&chains, s)?;
            cert.enumerate_by_top_index = Some(classes.into_iter().map(BigUint::from).collect());
        }
    }
    let needs_poset = [
        CountMethod::Mobius,
        CountMethod::Homology,
        CountMethod::Euler,
    ]
    .into_iter()
    .any(wants);
    if needs_poset {
        let vp = build_pi(n, s, budget.max_elements)?;
        poset_methods(&vp, budget, &wants, &mut cert)?;
    }

    let values = cert.values();
    if let Some((first, v)) = values.first() {
        for (m, w) in &values[1..] {
            if w != v {
                cert.agree = false;
                cert.notes.push(format!("{m} gives {w}, {first} gives {v}"));
            }
        }
    }
    let expected_sign = if n.is_multiple_of(2) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    if let Some(mu) = &cert.mobius {
        if mu.sign() != expected_sign {
            cert.agree = false;
            cert.notes
                .push(format!("mobius value {mu} has the wrong sign"));
        }
    }
    if let Some(chi) = cert.euler {
        let sign_ok = if n.is_multiple_of(2) {
            chi > 0
        } else {
            chi < 0
        };
        if !sign_ok {
            cert.agree = false;
            cert.notes
                .push(format!("Euler characteristic {chi} has the wrong sign"));
        }
    }
    if let Some(betti) = &cert.reduced_betti {
        if betti[..betti.len() - 1].iter().any(|&b| b != 0) {
            cert.agree = false;
            cert.notes
                .push(format!("homology below the top dimension: {betti:?}"));
        }
    }
    if let (Some(a), Some(b)) = (&cert.enumerate_by_top_index, &cert.recursion_by_top_index) {
        if a != b {
            cert.agree = false;
            cert.notes.push("top-index classes differ".into());
        }
    }
    Ok(cert)
}

fn poset_methods(
    vp: &VectorPoset,
    budget: Budget,
    wants: &dyn Fn(CountMethod) -> bool,
    cert: &mut Certificate,
) -> Result<()> {
    let p = vp.poset();
    if wants(CountMethod::Mobius) {
        cert.mobius = Some(p.mobius(p.bottom(), p.top())?);
    }
    if !(wants(CountMethod::Homology) || wants(CountMethod::Euler)) {
        return Ok(());
    }
    if p.height() < 2 {
        cert.notes
            .push("order complex has no proper part; homology and Euler do not apply".into());
        return Ok(());
    }
    let required = p.count_maximal_chains(p.bottom(), p.top())?;
    if required > BigUint::from(budget.max_chains) {
        return Err(SphereError::ResourceLimit {
            what: "chain",
            limit: budget.max_chains,
            required,
        });
    }
    let complex = p.order_complex()?;
    if wants(CountMethod::Euler) {
        cert.euler = Some(complex.reduced_euler_characteristic());
    }
    if wants(CountMethod::Homology) {
        let betti = complex.reduced_betti_numbers();
        cert.homology = Some(BigUint::from(
            *betti.last().expect("dimension -1 is present"),
        ));
        cert.reduced_betti = Some(betti);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_methods_agree_on_small_cases() {
        for (n, s, count) in [(1, 1, 1u32), (2, 1, 1), (3, 1, 4), (2, 2, 3), (3, 2, 46)] {
            let cert = certificate(n, s, Budget::default(), &CountMethod::ALL).unwrap();
            assert!(cert.agree, "{cert:?}");
            assert_eq!(cert.count(), Some(BigUint::from(count)));
        }
    }

    #[test]
    fn small_certificate_json() {
        let cert = certificate(3, 1, Budget::default(), &CountMethod::ALL).unwrap();
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["enumerate"], "4");
        assert_eq!(json["mobius"], "-4");
        assert_eq!(json["euler"], -4);
        assert_eq!(json["reduced_betti"], serde_json::json!([0, 0, 4]));
        assert_eq!(json["agree"], true);
    }

    #[test]
    fn single_element_case_skips_homology() {
        let cert = certificate(1, 2, Budget::default(), &CountMethod::ALL).unwrap();
        assert!(cert.agree);
        assert_eq!(cert.homology, None);
        assert_eq!(cert.euler, None);
        assert_eq!(cert.notes.len(), 1);
    }

    #[test]
    fn method_names_round_trip() {
        for m in CountMethod::ALL {
            assert_eq!(m.name().parse::<CountMethod>().unwrap(), m);
        }
        assert!("all".parse::<CountMethod>().is_err());
    }
}
