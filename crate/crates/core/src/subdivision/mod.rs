//! k-partitions, k-subdivisions, validity checking and the maximum relative diameter.

mod graph;
pub mod mesh;
mod partition;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::geometry::triangulate::{ear_clip, is_convex};
use crate::geometry::{convex_intersection_area, shoelace, Diameter, PieceLoop, Point, Tolerance};
use crate::scalar::Scalar;

pub use graph::{graph_counts, GraphCounts};
pub use partition::{regions_of_partition, KPartition};

/// k closed region loops tiling a body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", deny_unknown_fields)]
pub struct KSubdivision<T: Scalar> {
    body: ConvexBody<T>,
    regions: Vec<PieceLoop<T>>,
}

/// The region realizing the maximum relative diameter and a farthest pair in it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct DiameterWitness<T> {
    pub value: T,
    pub region_index: usize,
    pub a: Point<T>,
    pub b: Point<T>,
}

/// A failed subdivision condition.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation<T> {
    /// A region loop is not closed or has a degenerate piece.
    OpenLoop { region: usize, detail: String },
    /// A region has zero or negative (clockwise) area.
    NonPositiveArea { region: usize, area: T },
    /// A region reaches outside the body.
    OutsideBody { region: usize, point: Point<T> },
    /// A region is not a simple loop.
    NotSimple { region: usize },
    /// Region areas do not add up to the body area.
    AreaMismatch { total: T, body: T },
    /// Two region interiors overlap.
    Overlap {
        first: usize,
        second: usize,
        area: T,
    },
    /// A body point lies in no region.
    Uncovered { point: Point<T> },
}

impl<T: Scalar> fmt::Display for Violation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OpenLoop { region, detail } => {
                write!(f, "region {region}: loop not closed ({detail})")
            }
            Violation::NonPositiveArea { region, area } => {
                write!(f, "region {region}: non-positive area {area}")
            }
            Violation::OutsideBody { region, point } => {
                write!(
                    f,
                    "region {region}: point ({}, {}) outside the body",
                    point.x, point.y
                )
            }
            Violation::NotSimple { region } => write!(f, "region {region}: boundary is not simple"),
            Violation::AreaMismatch { total, body } => {
                write!(f, "area: regions sum to {total}, body has {body}")
            }
            Violation::Overlap {
                first,
                second,
                area,
            } => {
                write!(
                    f,
                    "disjoint interiors: regions {first} and {second} overlap by area {area}"
                )
            }
            Violation::Uncovered { point } => {
                write!(
                    f,
                    "coverage: point ({}, {}) lies in no region",
                    point.x, point.y
                )
            }
        }
    }
}

/// Sagitta used when discretizing arcs for overlap tests.
const CHECK_SAGITTA: f64 = 1e-4;
/// Coverage sample grid resolution per axis.
const COVERAGE_GRID: usize = 48;

impl<T: Scalar> KSubdivision<T> {
    /// Builds a subdivision without checking it; see [`KSubdivision::validate`].
    pub fn new(body: ConvexBody<T>, regions: Vec<PieceLoop<T>>) -> Self {
        KSubdivision { body, regions }
    }

    pub fn body(&self) -> &ConvexBody<T> {
        &self.body
    }

    pub fn regions(&self) -> &[PieceLoop<T>] {
        &self.regions
    }

    pub fn into_regions(self) -> Vec<PieceLoop<T>> {
        self.regions
    }

    pub fn k(&self) -> usize {
        self.regions.len()
    }

    pub fn similarity(&self, rotation: T, scale: T, translate: Point<T>) -> Self {
        KSubdivision {
            body: self.body.similarity(rotation, scale, translate),
            regions: self
                .regions
                .iter()
                .map(|r| r.similarity(rotation, scale, translate))
                .collect(),
        }
    }

    /// Cheap structural check: closed loops of positive area.
    pub fn check_structure(&self, tol: &Tolerance<T>) -> Result<()> {
        if self.regions.is_empty() {
            return Err(Error::InvalidSubdivision("no regions".into()));
        }
        for (i, r) in self.regions.iter().enumerate() {
            r.check_closed(tol)
                .map_err(|e| Error::InvalidSubdivision(format!("region {i}: {e}")))?;
            if r.signed_area() <= T::zero() {
                return Err(Error::InvalidSubdivision(format!(
                    "region {i} has non-positive area"
                )));
            }
        }
        Ok(())
    }

    /// Diameter of every region.
    pub fn region_diameters(&self, max_sagitta: T) -> Result<Vec<Diameter<T>>> {
        self.regions
            .par_iter()
            .map(|r| r.diameter(max_sagitta))
            .collect()
    }

    /// Maximum relative diameter with a witness (ties go to the lower index).
    pub fn d_m(&self, max_sagitta: T, tol: &Tolerance<T>) -> Result<DiameterWitness<T>> {
        self.check_structure(tol)?;
        let diams = self.region_diameters(max_sagitta)?;
        let mut best = DiameterWitness {
            value: T::neg_infinity(),
            region_index: 0,
            a: diams[0].a,
            b: diams[0].b,
        };
        for (i, d) in diams.iter().enumerate() {
            if d.value > best.value {
                best = DiameterWitness {
                    value: d.value,
                    region_index: i,
                    a: d.a,
                    b: d.b,
                };
            }
        }
        Ok(best)
    }

    /// Maximum relative diameter at the default discretization.
    pub fn max_relative_diameter(&self) -> Result<DiameterWitness<T>> {
        self.d_m(T::lit(T::DEFAULT_SAGITTA), &Tolerance::default())
    }

    /// All violated conditions (empty iff the subdivision is valid).
    pub fn validate(&self, tol: &Tolerance<T>) -> Vec<Violation<T>> {
        let mut out = Vec::new();
        let mut usable = vec![true; self.regions.len()];
        for (i, r) in self.regions.iter().enumerate() {
            if let Err(e) = r.check_closed(tol) {
                out.push(Violation::OpenLoop {
                    region: i,
                    detail: e.to_string(),
                });
                usable[i] = false;
                continue;
            }
            let a = r.signed_area();
            if a <= tol.eps_area {
                out.push(Violation::NonPositiveArea { region: i, area: a });
                usable[i] = false;
            }
        }
        let sag = T::lit(CHECK_SAGITTA);
        let polys: Vec<Option<Vec<Point<T>>>> = self
            .regions
            .iter()
            .zip(&usable)
            .map(|(r, &ok)| if ok { r.discretize(sag).ok() } else { None })
            .collect();
        let slack = tol.eps_geom * T::lit(10.0);
        for (i, poly) in polys.iter().enumerate() {
            let Some(poly) = poly else { continue };
            if let Some(&p) = poly.iter().find(|&&p| !self.body.contains(p, slack)) {
                out.push(Violation::OutsideBody {
                    region: i,
                    point: p,
                });
            }
        }

        let total: T = self.regions.iter().map(|r| r.signed_area()).sum();
        let body_area = self.body.area();
        let kk = T::from_usize_lossy(self.regions.len().max(1));
        if (total - body_area).abs() > kk * tol.eps_area {
            out.push(Violation::AreaMismatch {
                total,
                body: body_area,
            });
        }

        // Overlaps: convex pieces per region, bbox prefilter, pairwise clipping.
        let pieces: Vec<Option<Vec<Vec<Point<T>>>>> = polys
            .par_iter()
            .map(|poly| {
                let poly = poly.as_ref()?;
                if is_convex(poly, T::lit(1e-12)) {
                    let mut p = poly.clone();
                    if shoelace(&p) < T::zero() {
                        p.reverse();
                    }
                    return Some(vec![p]);
                }
                ear_clip(poly).map(|tris| tris.into_iter().map(|t| t.to_vec()).collect())
            })
            .collect();
        for (i, p) in pieces.iter().enumerate() {
            if polys[i].is_some() && p.is_none() {
                out.push(Violation::NotSimple { region: i });
            }
        }
        let boxes: Vec<(Point<T>, Point<T>)> = self.regions.iter().map(|r| r.bbox()).collect();
        let n = self.regions.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let (a, b) = (boxes[i], boxes[j]);
                a.0.x < b.1.x - slack
                    && b.0.x < a.1.x - slack
                    && a.0.y < b.1.y - slack
                    && b.0.y < a.1.y - slack
            })
            .collect();
        let overlaps: Vec<Violation<T>> = pairs
            .par_iter()
            .filter_map(|&(i, j)| {
                let (pi, pj) = (pieces[i].as_ref()?, pieces[j].as_ref()?);
                let mut area = T::zero();
                for a in pi {
                    for b in pj {
                        area += convex_intersection_area(a, b);
                    }
                }
                (area > tol.eps_area).then_some(Violation::Overlap {
                    first: i,
                    second: j,
                    area,
                })
            })
            .collect();
        out.extend(overlaps);

        // Coverage on a grid of interior sample points.
        let (lo, hi) = self.body.bbox();
        let g = COVERAGE_GRID;
        let samples: Vec<Point<T>> = (0..g)
            .flat_map(|ix| (0..g).map(move |iy| (ix, iy)))
            .map(|(ix, iy)| {
                let fx = (T::from_usize_lossy(ix) + T::lit(0.5)) / T::from_usize_lossy(g);
                let fy = (T::from_usize_lossy(iy) + T::lit(0.5)) / T::from_usize_lossy(g);
                Point::new(lo.x + (hi.x - lo.x) * fx, lo.y + (hi.y - lo.y) * fy)
            })
            .filter(|&p| self.body.contains_interior(p, slack))
            .collect();
        let uncovered: Vec<Point<T>> = samples
            .par_iter()
            .filter(|&&p| {
                !self
                    .regions
                    .iter()
                    .zip(&boxes)
                    .zip(&usable)
                    .any(|((r, bx), &ok)| {
                        ok && p.x >= bx.0.x - slack
                            && p.x <= bx.1.x + slack
                            && p.y >= bx.0.y - slack
                            && p.y <= bx.1.y + slack
                            && r.contains(p, tol.eps_geom)
                    })
            })
            .copied()
            .collect();
        out.extend(
            uncovered
                .into_iter()
                .take(8)
                .map(|point| Violation::Uncovered { point }),
        );
        out
    }

    /// True iff [`KSubdivision::validate`] reports nothing.
    pub fn is_valid(&self, tol: &Tolerance<T>) -> bool {
        self.validate(tol).is_empty()
    }
}
