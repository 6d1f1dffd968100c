//! Closed-form single-layer QAOA expectation values.
//!
//! For a vertex `i` and an edge `(i, j)` the contributions are
//!
//! ```text
//! <C_i>  = h_i sin(2β) sin(2γ h_i) Π_{k~i} cos(2γ J_ik)
//! <C_ij> = ½ sin(4β) · J sin(2γJ) [cos(2γh_i) Π_{k~i, k≠j} cos(2γJ_ik) + (i↔j)]
//!        − ½ sin²(2β) · J Π_{i-only} cos(2γJ_ik) Π_{j-only} cos(2γJ_jk)
//!            · [cos(2γ(h_i+h_j)) Π_{shared} cos(2γ(J_ik+J_jk))
//!               − cos(2γ(h_i−h_j)) Π_{shared} cos(2γ(J_ik−J_jk))]
//! ```
//!
//! Every term is a fixed combination of `sin(2β)`, `sin(4β)/2` and
//! `sin²(2β)/2` with γ-only coefficients, so [`GammaProfile`] evaluates the
//! coefficients once per γ and any β afterwards in O(1).

mod special;

pub use special::{
    expect_edge_complete, expect_edge_maxcut, expect_edge_triangle_free, expect_field_only,
    expect_p5,
};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{merge_neighbors, IsingInstance, Neighbor, NeighborClass};
use crate::scalar::{cos_r, ordered_sum, sin_r, Scalar};

/// Edge counts above this evaluate per-edge coefficients on the rayon pool.
const PARALLEL_EDGES: usize = 4096;

/// A point `(β, γ)` in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angles<T> {
    pub beta: T,
    pub gamma: T,
}

impl<T: Scalar> Angles<T> {
    pub fn new(beta: T, gamma: T) -> Self {
        Self { beta, gamma }
    }
}

/// Per-vertex and per-edge contributions and their total `F(β, γ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationBreakdown<T> {
    pub vertex_terms: Vec<T>,
    pub edge_terms: Vec<T>,
    pub total: T,
}

impl<T: Scalar> ExpectationBreakdown<T> {
    pub(crate) fn from_terms(vertex_terms: Vec<T>, edge_terms: Vec<T>) -> Self {
        let total = ordered_sum(&[&vertex_terms, &edge_terms]);
        Self {
            vertex_terms,
            edge_terms,
            total,
        }
    }
}

/// The β-dependent prefactors `sin(2β)`, `sin(4β)/2`, `sin²(2β)/2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MixerFactors<T> {
    pub sin2: T,
    pub half_sin4: T,
    pub half_sin2_sq: T,
}

impl<T: Scalar> MixerFactors<T> {
    pub(crate) fn new(beta: T) -> Self {
        let two = T::lit(2.0);
        let half = T::lit(0.5);
        let sin2 = sin_r(two * beta);
        Self {
            sin2,
            half_sin4: half * sin_r(T::lit(4.0) * beta),
            half_sin2_sq: half * sin2 * sin2,
        }
    }

    #[inline]
    pub(crate) fn edge(&self, parts: EdgeParts<T>) -> T {
        self.half_sin4 * parts.linear - self.half_sin2_sq * parts.quadratic
    }
}

/// γ-only coefficients of one edge term: `½sin4β·linear − ½sin²2β·quadratic`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct EdgeParts<T> {
    pub linear: T,
    pub quadratic: T,
}

#[inline]
fn cos2<T: Scalar>(gamma: T, x: T) -> T {
    cos_r(T::lit(2.0) * gamma * x)
}

#[inline]
fn sin2<T: Scalar>(gamma: T, x: T) -> T {
    sin_r(T::lit(2.0) * gamma * x)
}

/// Coefficient of `sin(2β)` in `<C_i>`.
fn vertex_part<T: Scalar>(
    instance: &IsingInstance<T>,
    i: usize,
    gamma: T,
    edge_trig: impl Fn(&Neighbor<T>) -> (T, T),
) -> T {
    let h = instance.field(i);
    if h == T::zero() {
        return T::zero();
    }
    let product = instance
        .neighbors(i)
        .iter()
        .fold(T::one(), |p, nb| p * edge_trig(nb).0);
    h * sin2(gamma, h) * product
}

/// Classifies the neighbors of edge `e` in one merge pass and returns its
/// γ coefficients. `edge_trig` supplies `(cos 2γJ, sin 2γJ)` for an
/// adjacency entry; shared-neighbor factors use the angle-addition identities
/// so the inner loop does no trigonometry.
fn edge_parts<T: Scalar>(
    instance: &IsingInstance<T>,
    e: usize,
    gamma: T,
    edge_trig: impl Fn(&Neighbor<T>) -> (T, T),
) -> EdgeParts<T> {
    let edge = instance.edges()[e];
    let (i, j, coupling) = (edge.u, edge.v, edge.coupling);
    let one = T::one();
    // Products over i's neighbors except j, j's except i, i-only, j-only,
    // and the two shared-neighbor products.
    let (mut p_i, mut p_j, mut only_i, mut only_j) = (one, one, one, one);
    let (mut plus, mut minus) = (one, one);
    merge_neighbors(
        instance.neighbors(i),
        instance.neighbors(j),
        |class| match class {
            NeighborClass::OnlyFirst(nb) if nb.vertex != j => {
                let c = edge_trig(nb).0;
                p_i = p_i * c;
                only_i = only_i * c;
            }
            NeighborClass::OnlySecond(nb) if nb.vertex != i => {
                let c = edge_trig(nb).0;
                p_j = p_j * c;
                only_j = only_j * c;
            }
            NeighborClass::Shared(a, b) => {
                let ((ca, sa), (cb, sb)) = (edge_trig(a), edge_trig(b));
                p_i = p_i * ca;
                p_j = p_j * cb;
                plus = plus * (ca * cb - sa * sb);
                minus = minus * (ca * cb + sa * sb);
            }
            _ => {}
        },
    );
    let (h_i, h_j) = (instance.field(i), instance.field(j));
    EdgeParts {
        linear: coupling
            * sin2(gamma, coupling)
            * (cos2(gamma, h_i) * p_i + cos2(gamma, h_j) * p_j),
        quadratic: coupling
            * only_i
            * only_j
            * (cos2(gamma, h_i + h_j) * plus - cos2(gamma, h_i - h_j) * minus),
    }
}

fn check_vertex<T: Scalar>(instance: &IsingInstance<T>, i: usize) -> Result<()> {
    if i < instance.n() {
        Ok(())
    } else {
        Err(Error::Range {
            vertex: i,
            n: instance.n(),
            line: None,
        })
    }
}

/// `<C_i>` for vertex `i`.
pub fn expect_vertex<T: Scalar>(
    instance: &IsingInstance<T>,
    i: usize,
    angles: Angles<T>,
) -> Result<T> {
    check_vertex(instance, i)?;
    let part = vertex_part(instance, i, angles.gamma, |nb| {
        trig2(angles.gamma, nb.coupling)
    });
    Ok(sin_r(T::lit(2.0) * angles.beta) * part)
}

/// `<C_ij>` for edge index `e`.
pub fn expect_edge<T: Scalar>(
    instance: &IsingInstance<T>,
    e: usize,
    angles: Angles<T>,
) -> Result<T> {
    instance.edge(e)?;
    let parts = edge_parts(instance, e, angles.gamma, |nb| {
        trig2(angles.gamma, nb.coupling)
    });
    Ok(MixerFactors::new(angles.beta).edge(parts))
}

fn trig2<T: Scalar>(gamma: T, x: T) -> (T, T) {
    (cos2(gamma, x), sin2(gamma, x))
}

/// `(cos 2γJ_e, sin 2γJ_e)` for every edge, indexed by edge.
fn edge_trig<T: Scalar>(instance: &IsingInstance<T>, gamma: T) -> Vec<(T, T)> {
    instance
        .edges()
        .iter()
        .map(|e| trig2(gamma, e.coupling))
        .collect()
}

fn map_edges<T: Scalar, R: Send>(
    instance: &IsingInstance<T>,
    f: impl Fn(usize) -> R + Sync + Send,
) -> Vec<R> {
    let m = instance.num_edges();
    if m > PARALLEL_EDGES {
        (0..m).into_par_iter().map(f).collect()
    } else {
        (0..m).map(f).collect()
    }
}

/// Every vertex and edge term at `angles`, summed in index order.
pub fn expect_total<T: Scalar>(
    instance: &IsingInstance<T>,
    angles: Angles<T>,
) -> ExpectationBreakdown<T> {
    let gamma = angles.gamma;
    let table = edge_trig(instance, gamma);
    let lookup = |nb: &Neighbor<T>| table[nb.edge];
    let mixer = MixerFactors::new(angles.beta);
    let vertex_terms = (0..instance.n())
        .map(|i| mixer.sin2 * vertex_part(instance, i, gamma, lookup))
        .collect();
    let edge_terms = map_edges(instance, |e| {
        mixer.edge(edge_parts(instance, e, gamma, lookup))
    });
    ExpectationBreakdown::from_terms(vertex_terms, edge_terms)
}

/// The γ-only sums behind `F(·, γ)`:
/// `F(β, γ) = sin(2β)·vertex + ½sin(4β)·linear − ½sin²(2β)·quadratic`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaProfile<T> {
    pub gamma: T,
    pub vertex: T,
    pub linear: T,
    pub quadratic: T,
}

impl<T: Scalar> GammaProfile<T> {
    pub fn compute(instance: &IsingInstance<T>, gamma: T) -> Self {
        let table = edge_trig(instance, gamma);
        let lookup = |nb: &Neighbor<T>| table[nb.edge];
        let vertex: Vec<T> = (0..instance.n())
            .map(|i| vertex_part(instance, i, gamma, lookup))
            .collect();
        let parts = map_edges(instance, |e| edge_parts(instance, e, gamma, lookup));
        let linear: Vec<T> = parts.iter().map(|p| p.linear).collect();
        let quadratic: Vec<T> = parts.iter().map(|p| p.quadratic).collect();
        Self {
            gamma,
            vertex: ordered_sum(&[&vertex]),
            linear: ordered_sum(&[&linear]),
            quadratic: ordered_sum(&[&quadratic]),
        }
    }

    /// `F(β, γ)` for this profile's γ.
    #[inline]
    pub fn at(&self, beta: T) -> T {
        let m = MixerFactors::new(beta);
        m.sin2 * self.vertex + m.half_sin4 * self.linear - m.half_sin2_sq * self.quadratic
    }
}

/// `F(β, γ)` through the γ profile; agrees with [`expect_total`] up to
/// rounding and is the objective used by scans and the optimizer.
pub fn evaluate<T: Scalar>(instance: &IsingInstance<T>, angles: Angles<T>) -> T {
    GammaProfile::compute(instance, angles.gamma).at(angles.beta)
}
