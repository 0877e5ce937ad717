//! Closed-form lower and upper bounds on the maximum relative diameter.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::body::ConvexBody;
use crate::constructions::{d_m_standard_formula, hex_cell_diameter, hex_subdivision};
use crate::error::Result;
use crate::geometry::Tolerance;
use crate::scalar::Scalar;

/// Constant of the `O(1/k)` term used to pin the hexagonal upper envelope.
pub const HEX_ENVELOPE_CONSTANT: f64 = 10.0;

/// Maximal areas `m_j` of j-gons of unit diameter, j = 3..9, and the cap
/// `pi/4` used for j >= 10.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct PolygonAreaTable<T> {
    pub m: BTreeMap<usize, T>,
    pub m_cap: T,
}

impl<T: Scalar> PolygonAreaTable<T> {
    /// `m_j` for any `j >= 3` (the cap beyond 9).
    pub fn get(&self, j: usize) -> T {
        self.m.get(&j).copied().unwrap_or(self.m_cap)
    }
}

/// Odd j: `j/2 cos(pi/j) tan(pi/(2j))` (regular j-gon of unit diameter).
pub fn odd_polygon_area<T: Scalar>(j: usize) -> T {
    let jj = T::from_usize_lossy(j);
    jj * T::lit(0.5) * (T::PI() / jj).cos() * (T::PI() / (T::lit(2.0) * jj)).tan()
}

/// The table: odd entries from the closed formula, even entries from known
/// numerical optima.
pub fn m_table<T: Scalar>() -> PolygonAreaTable<T> {
    let mut m = BTreeMap::new();
    for j in [3, 5, 7, 9] {
        m.insert(j, odd_polygon_area(j));
    }
    m.insert(4, T::lit(0.5));
    m.insert(6, T::lit(0.674_981_442_9));
    m.insert(8, T::lit(0.726_868_482_8));
    PolygonAreaTable {
        m,
        m_cap: T::FRAC_PI_4(),
    }
}

/// Optimum of the packing LP and one optimal assignment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct LpSolution<T> {
    pub value: T,
    /// Nonzero variables: `"f3"`..`"f9"` and `"f_cap"` (j >= 10).
    pub argmax: BTreeMap<String, T>,
}

/// Maximizes `sum f_j m_j + f_cap pi/4` subject to `sum f = k`,
/// `sum j f_j + 10 f_cap <= 6k`, `f >= 0`, by enumerating basic solutions.
pub fn lp_packing_constant<T: Scalar>(k: usize) -> LpSolution<T> {
    let table = m_table::<T>();
    let kk = T::from_usize_lossy(k);
    // (name, edge weight, area coefficient)
    let vars: Vec<(String, T, T)> = (3..=9)
        .map(|j| (format!("f{j}"), T::from_usize_lossy(j), table.get(j)))
        .chain(std::iter::once((
            "f_cap".to_string(),
            T::lit(10.0),
            table.m_cap,
        )))
        .collect();
    let six = T::lit(6.0);
    let mut best: Option<LpSolution<T>> = None;
    let mut offer = |value: T, assign: Vec<(usize, T)>| {
        if best.as_ref().is_none_or(|b| value > b.value) {
            let argmax = assign
                .into_iter()
                .filter(|(_, v)| *v > T::zero())
                .map(|(i, v)| (vars[i].0.clone(), v))
                .collect();
            best = Some(LpSolution { value, argmax });
        }
    };
    // One structural variable basic together with the slack.
    for (i, v) in vars.iter().enumerate() {
        if v.1 <= six {
            offer(v.2 * kk, vec![(i, kk)]);
        }
    }
    // Two structural variables basic, inequality tight.
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            let (wi, wj) = (vars[i].1, vars[j].1);
            if wi == wj {
                continue;
            }
            let fj = (six - wi) * kk / (wj - wi);
            let fi = kk - fj;
            if fi >= T::zero() && fj >= T::zero() {
                offer(fi * vars[i].2 + fj * vars[j].2, vec![(i, fi), (j, fj)]);
            }
        }
    }
    best.unwrap_or(LpSolution {
        value: T::zero(),
        argmax: BTreeMap::new(),
    })
}

/// The packing constant `(m_5 + m_7)/2` (the LP optimum per region).
pub fn packing_constant<T: Scalar>() -> T {
    let t = m_table::<T>();
    (t.get(5) + t.get(7)) * T::lit(0.5)
}

/// `sqrt(A/k) sqrt(4/pi)`: no region can have smaller diameter than a disc
/// of area `A/k`.
pub fn bound_isodiametric<T: Scalar>(c: &ConvexBody<T>, k: usize) -> T {
    (c.area() / T::from_usize_lossy(k.max(1))).sqrt() * (T::lit(4.0) / T::PI()).sqrt()
}

/// Packing lower bound: the asymptotic main term and the exact positive
/// root of `c k d^2 + P d - A = 0` (with `c` the packing constant).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct PackingBound<T> {
    pub main: T,
    pub rigorous: T,
}

pub fn bound_hexagonal_lower<T: Scalar>(c: &ConvexBody<T>, k: usize) -> PackingBound<T> {
    let kk = T::from_usize_lossy(k.max(1));
    let (a, p) = (c.area(), c.perimeter());
    let cst = packing_constant::<T>();
    let main = (a / kk).sqrt() / cst.sqrt();
    let lead = cst * kk;
    let rigorous = (-p + (p * p + T::lit(4.0) * lead * a).sqrt()) / (T::lit(2.0) * lead);
    PackingBound { main, rigorous }
}

/// `max{R, 2 r sin(pi/k)}`: sharp for partitions, valid for subdivisions when k <= 6.
pub fn bound_standard<T: Scalar>(c: &ConvexBody<T>, k: usize, tol: &Tolerance<T>) -> Result<T> {
    d_m_standard_formula(c, k, tol)
}

/// `sqrt(A/k) sqrt(8/(3 sqrt3)) + 10/k`: envelope of the hexagonal construction.
pub fn hex_envelope<T: Scalar>(c: &ConvexBody<T>, k: usize) -> T {
    let kk = T::from_usize_lossy(k.max(1));
    (c.area() / kk).sqrt() * (T::lit(8.0) / (T::lit(3.0) * T::lit(3.0).sqrt())).sqrt()
        + T::lit(HEX_ENVELOPE_CONSTANT) / kk
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// Which minimization problem a bound speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Partition,
    Subdivision,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct BoundEntry<T> {
    pub value: T,
    pub kind: BoundKind,
    /// False for asymptotic estimates that are not proven bounds at this k.
    pub rigorous: bool,
    pub applies_to: Vec<Regime>,
    /// Short justification of the bound.
    pub basis: String,
}

/// All applicable bounds for one `(body, k)` pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct BoundReport<T> {
    pub body_id: String,
    pub k: usize,
    pub bounds: BTreeMap<String, BoundEntry<T>>,
    /// Pairs (lower, upper) of rigorous bounds in a shared regime that contradict each other.
    pub inconsistencies: Vec<String>,
}

impl<T: Scalar> BoundReport<T> {
    pub fn get(&self, name: &str) -> Option<T> {
        self.bounds.get(name).map(|b| b.value)
    }

    pub fn is_consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }

    /// Largest rigorous lower bound for a regime.
    pub fn best_lower(&self, regime: Regime) -> Option<T> {
        self.bounds
            .values()
            .filter(|b| b.kind == BoundKind::Lower && b.rigorous && b.applies_to.contains(&regime))
            .map(|b| b.value)
            .fold(None, |acc: Option<T>, v| Some(acc.map_or(v, |a| a.max(v))))
    }

    /// Markdown table, values to 12 significant digits.
    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Bounds for `{}`, k = {}\n\n", self.body_id, self.k);
        s.push_str("| name | kind | value | rigorous | applies to | basis |\n");
        s.push_str("|---|---|---|---|---|---|\n");
        for (name, b) in &self.bounds {
            let regimes: Vec<&str> = b
                .applies_to
                .iter()
                .map(|r| match r {
                    Regime::Partition => "partition",
                    Regime::Subdivision => "subdivision",
                })
                .collect();
            s.push_str(&format!(
                "| {name} | {} | {} | {} | {} | {} |\n",
                match b.kind {
                    BoundKind::Lower => "lower",
                    BoundKind::Upper => "upper",
                },
                format_sig(b.value.as_f64(), 12),
                if b.rigorous { "yes" } else { "no" },
                regimes.join(", "),
                b.basis
            ));
        }
        if !self.inconsistencies.is_empty() {
            s.push_str("\n**Inconsistent:**\n\n");
            for i in &self.inconsistencies {
                s.push_str(&format!("- {i}\n"));
            }
        }
        s
    }
}

/// Formats `x` with `digits` significant digits in plain or scientific notation.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    // Take the exponent after rounding so 0.99999... prints as 1.000...
    let sci = format!("{x:.*e}", digits.max(1) - 1);
    let mag: i32 = sci
        .split_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if (-5..15).contains(&mag) {
        let decimals = (digits as i32 - 1 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.*e}", digits - 1)
    }
}

/// Aggregates every applicable bound. With `with_construction` the
/// hexagonal subdivision is built and its measured `d_M` added as an upper
/// bound.
pub fn bound_report<T: Scalar>(
    c: &ConvexBody<T>,
    body_id: &str,
    k: usize,
    with_construction: bool,
    tol: &Tolerance<T>,
) -> BoundReport<T> {
    use BoundKind::*;
    use Regime::*;
    let mut bounds = BTreeMap::new();
    let mut add = |name: &str,
                   value: T,
                   kind: BoundKind,
                   rigorous: bool,
                   applies_to: Vec<Regime>,
                   basis: &str| {
        bounds.insert(
            name.to_string(),
            BoundEntry {
                value,
                kind,
                rigorous,
                applies_to,
                basis: basis.to_string(),
            },
        );
    };
    let both = || vec![Partition, Subdivision];
    let kk = T::from_usize_lossy(k.max(1));
    if k >= 2 && c.verify_symmetry(k, tol) {
        let m = c.metrics();
        let chord = T::lit(2.0) * m.inradius * (T::PI() / kk).sin();
        let small = if k <= 6 { both() } else { vec![Partition] };
        add(
            "circumradius",
            m.circumradius,
            Lower,
            true,
            small.clone(),
            "some region contains the center and a farthest boundary point direction (R)",
        );
        add(
            "inradius_chord",
            chord,
            Lower,
            true,
            both(),
            "two of k points on the inscribed circle share a region (2 r sin(pi/k))",
        );
        add(
            "standard",
            m.circumradius.max(chord),
            Lower,
            true,
            small,
            "max{R, 2 r sin(pi/k)}, attained by the standard partition",
        );
        add(
            "standard_partition",
            m.circumradius.max(chord),
            Upper,
            true,
            vec![Partition],
            "d_M of the standard partition",
        );
    }
    add(
        "isodiametric",
        bound_isodiametric(c, k),
        Lower,
        true,
        both(),
        "isodiametric inequality applied to the smallest-area region",
    );
    let pack = bound_hexagonal_lower(c, k);
    add(
        "packing_root",
        pack.rigorous,
        Lower,
        true,
        both(),
        "positive root of c k d^2 + P d = A, c = (m5+m7)/2 from the packing LP",
    );
    add(
        "packing_main",
        pack.main,
        Lower,
        false,
        both(),
        "asymptotic main term sqrt(A/k)/sqrt(c)",
    );
    let m = c.metrics();
    if let Ok(dk) = hex_cell_diameter(m.area, m.perimeter, k) {
        add(
            "hex_cell_diameter",
            dk,
            Upper,
            true,
            vec![Subdivision],
            "cell diameter d_k of the hexagonal lattice construction",
        );
        add(
            "hex_envelope",
            hex_envelope(c, k),
            Upper,
            false,
            vec![Subdivision],
            "sqrt(A/k) sqrt(8/(3 sqrt 3)) + 10/k",
        );
        if with_construction {
            if let Ok(v) =
                hex_subdivision(c, k, tol).and_then(|(s, _)| s.d_m(T::lit(T::DEFAULT_SAGITTA), tol))
            {
                add(
                    "hex_construction",
                    v.value,
                    Upper,
                    true,
                    vec![Subdivision],
                    "measured d_M of the hexagonal subdivision",
                );
            }
        }
    }
    let mut inconsistencies = Vec::new();
    let slack = T::lit(1e-9);
    for (ln, l) in bounds.iter().filter(|(_, b)| b.kind == Lower && b.rigorous) {
        for (un, u) in bounds.iter().filter(|(_, b)| b.kind == Upper && b.rigorous) {
            let shared = l.applies_to.iter().any(|r| u.applies_to.contains(r));
            if shared && l.value > u.value + slack {
                inconsistencies.push(format!("{ln} = {} exceeds {un} = {}", l.value, u.value));
            }
        }
    }
    BoundReport {
        body_id: body_id.to_string(),
        k,
        bounds,
        inconsistencies,
    }
}

/// Largest rigorous lower bound on `d_M` for the given regime.
pub fn best_lower_bound<T: Scalar>(
    c: &ConvexBody<T>,
    k: usize,
    regime: Regime,
    tol: &Tolerance<T>,
) -> T {
    bound_report(c, "", k, false, tol)
        .best_lower(regime)
        .unwrap_or(T::zero())
}
