//! Ising problem data: vertices, couplings, fields and sorted adjacency.

mod generate;
mod gset;

pub use generate::{generate, CouplingLaw, FieldLaw, GeneratorSpec, GraphKind};
pub use gset::{parse_gset, serialize};

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A stored coupling `J` between `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub u: usize,
    pub v: usize,
    pub coupling: T,
}

/// Adjacency entry: the neighbor, the coupling to it, and the index of that edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor<T> {
    pub vertex: usize,
    pub coupling: T,
    pub edge: usize,
}

/// Cost function `C(s) = Σ h_i s_i + Σ J_ij s_i s_j` on `n` spins.
///
/// Edges are kept sorted by `(u, v)` and each vertex's adjacency is sorted by
/// neighbor index, which is what the merge-based neighbor classification
/// relies on. Instances are immutable once built.
#[derive(Debug, Clone)]
pub struct IsingInstance<T> {
    n: usize,
    edges: Vec<Edge<T>>,
    fields: Vec<T>,
    adjacency: Vec<Vec<Neighbor<T>>>,
    uniform_coupling: Option<T>,
    uniform_field: Option<T>,
}

impl<T: Scalar> PartialEq for IsingInstance<T> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.fields == other.fields
    }
}

impl<T: Scalar> IsingInstance<T> {
    /// Builds an instance from fields and `(u, v, J)` triples (0-based).
    ///
    /// Endpoints are normalized to `u < v` and zero couplings are dropped.
    pub fn new(
        n: usize,
        fields: Vec<T>,
        edges: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter(
                "instance needs at least one vertex".into(),
            ));
        }
        if fields.len() != n {
            return Err(Error::Parameter(format!(
                "expected {n} fields, got {}",
                fields.len()
            )));
        }
        if let Some(i) = fields.iter().position(|h| !h.is_finite()) {
            return Err(Error::Parameter(format!("field h_{i} is not finite")));
        }
        let mut stored = Vec::new();
        for (a, b, j) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::Range {
                        vertex: x,
                        n,
                        line: None,
                    });
                }
            }
            if a == b {
                return Err(Error::Parameter(format!("self-loop on vertex {a}")));
            }
            if !j.is_finite() {
                return Err(Error::Parameter(format!(
                    "coupling ({a}, {b}) is not finite"
                )));
            }
            if j == T::zero() {
                continue;
            }
            stored.push(Edge {
                u: a.min(b),
                v: a.max(b),
                coupling: j,
            });
        }
        stored.sort_by_key(|x| (x.u, x.v));
        if let Some(w) = stored
            .windows(2)
            .find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return Err(Error::DuplicateEdge {
                line: 0,
                u: w[0].u,
                v: w[0].v,
            });
        }
        Ok(Self::from_sorted(n, fields, stored))
    }

    fn from_sorted(n: usize, fields: Vec<T>, edges: Vec<Edge<T>>) -> Self {
        let mut adjacency: Vec<Vec<Neighbor<T>>> = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            adjacency[e.u].push(Neighbor {
                vertex: e.v,
                coupling: e.coupling,
                edge: idx,
            });
            adjacency[e.v].push(Neighbor {
                vertex: e.u,
                coupling: e.coupling,
                edge: idx,
            });
        }
        for list in &mut adjacency {
            list.sort_by_key(|nb| nb.vertex);
        }
        let uniform_coupling = uniform(edges.iter().map(|e| e.coupling));
        let uniform_field = uniform(fields.iter().copied());
        Self {
            n,
            edges,
            fields,
            adjacency,
            uniform_coupling,
            uniform_field,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<&Edge<T>> {
        self.edges.get(e).ok_or_else(|| {
            Error::Parameter(format!(
                "edge index {e} out of range ({} edges)",
                self.edges.len()
            ))
        })
    }

    pub fn fields(&self) -> &[T] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> T {
        self.fields[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn neighbors(&self, i: usize) -> &[Neighbor<T>] {
        &self.adjacency[i]
    }

    /// Coupling between `u` and `v`, if the edge exists.
    pub fn coupling(&self, u: usize, v: usize) -> Option<T> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |nb| nb.vertex)
            .ok()
            .map(|k| list[k].coupling)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::Range {
                vertex: v,
                n: self.n,
                line: None,
            })
        } else {
            Ok(())
        }
    }

    /// Vertices adjacent to both `u` and `v`, ascending.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut out = Vec::new();
        merge_neighbors(&self.adjacency[u], &self.adjacency[v], |class| {
            if let NeighborClass::Shared(a, _) = class {
                out.push(a.vertex);
            }
        });
        Ok(out)
    }

    /// Number of common neighbors of `u` and `v`.
    pub fn shared_count(&self, u: usize, v: usize) -> usize {
        let mut f = 0;
        merge_neighbors(&self.adjacency[u], &self.adjacency[v], |class| {
            if matches!(class, NeighborClass::Shared(..)) {
                f += 1;
            }
        });
        f
    }

    /// `Σ J_ij`, plus `Σ h_i` when any field is nonzero.
    pub fn sum_of_weights(&self) -> T {
        let couplings = self.edges.iter().fold(T::zero(), |s, e| s + e.coupling);
        if self.has_fields() {
            self.fields.iter().fold(couplings, |s, &h| s + h)
        } else {
            couplings
        }
    }

    /// `Σ J_ij² + Σ h_i²`.
    pub fn sum_of_squares(&self) -> T {
        let c = self
            .edges
            .iter()
            .fold(T::zero(), |s, e| s + e.coupling * e.coupling);
        self.fields.iter().fold(c, |s, &h| s + h * h)
    }

    pub fn has_fields(&self) -> bool {
        self.fields.iter().any(|&h| h != T::zero())
    }

    /// `Some(J)` when every stored edge carries the same coupling `J`.
    pub fn uniform_coupling(&self) -> Option<T> {
        self.uniform_coupling
    }

    /// `Some(h)` when every vertex carries the same field `h`.
    pub fn uniform_field(&self) -> Option<T> {
        self.uniform_field
    }

    pub fn is_integer_weighted(&self) -> bool {
        self.fields.iter().all(|h| h.fract() == T::zero())
            && self.edges.iter().all(|e| e.coupling.fract() == T::zero())
    }

    /// No fields and every coupling is ±1.
    pub fn is_unit_maxcut(&self) -> bool {
        !self.has_fields() && self.edges.iter().all(|e| e.coupling.abs() == T::one())
    }

    /// Cost of a spin configuration (entries must be ±1).
    pub fn energy(&self, spins: &[i8]) -> T {
        let s = |i: usize| T::from_i8(spins[i]).expect("spin converts");
        let fields = self
            .fields
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, &h)| acc + h * s(i));
        self.edges
            .iter()
            .fold(fields, |acc, e| acc + e.coupling * s(e.u) * s(e.v))
    }
}

fn uniform<T: Scalar>(mut values: impl Iterator<Item = T>) -> Option<T> {
    let first = values.next()?;
    values.all(|x| x == first).then_some(first)
}

/// Position of a neighbor `k` of edge `(i, j)` relative to both endpoints.
#[derive(Debug, Clone, Copy)]
pub(crate) enum NeighborClass<'a, T> {
    /// Adjacent to `i` only (the entry from `i`'s list).
    OnlyFirst(&'a Neighbor<T>),
    /// Adjacent to `j` only.
    OnlySecond(&'a Neighbor<T>),
    /// Adjacent to both: entries from `i`'s and `j`'s lists.
    Shared(&'a Neighbor<T>, &'a Neighbor<T>),
}

/// One merge pass over two sorted adjacency lists, O(d_i + d_j).
///
/// Callers classifying an edge `(i, j)` see `j` in `i`'s list (and `i` in
/// `j`'s) as an exclusive neighbor and must skip it themselves.
pub(crate) fn merge_neighbors<'a, T>(
    first: &'a [Neighbor<T>],
    second: &'a [Neighbor<T>],
    mut visit: impl FnMut(NeighborClass<'a, T>),
) {
    let (mut a, mut b) = (0, 0);
    while a < first.len() && b < second.len() {
        match first[a].vertex.cmp(&second[b].vertex) {
            Ordering::Less => {
                visit(NeighborClass::OnlyFirst(&first[a]));
                a += 1;
            }
            Ordering::Greater => {
                visit(NeighborClass::OnlySecond(&second[b]));
                b += 1;
            }
            Ordering::Equal => {
                visit(NeighborClass::Shared(&first[a], &second[b]));
                a += 1;
                b += 1;
            }
        }
    }
    first[a..]
        .iter()
        .for_each(|nb| visit(NeighborClass::OnlyFirst(nb)));
    second[b..]
        .iter()
        .for_each(|nb| visit(NeighborClass::OnlySecond(nb)));
}
