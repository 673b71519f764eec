//! The real locus X(ℝ) as four copies of the polygon glued along faces.
//!
//! Cells are indexed by cones: the 2-cone σ_i = cone(v_i, v_{i+1}) gives the
//! polygon vertex w_i, the ray v_i gives the edge E_i from w_{i-1} to w_i,
//! and the zero cone gives the open 2-cell. Each copy P_ε is labelled by a
//! sign homomorphism ε : M → {±1}. A gluing rule decides which copies of a
//! vertex or edge are identified; cells of the complex are the resulting
//! identification classes.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use serde::Serialize;

use crate::divisor::LatticePolygon;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::LatticeVector;

/// A homomorphism ε : M → {±1}, stored as (ε(e1*), ε(e2*)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignHom {
    s1: i8,
    s2: i8,
}

impl SignHom {
    /// All four homomorphisms, in the order used to number cells.
    pub const ALL: [SignHom; 4] = [
        SignHom { s1: 1, s2: 1 },
        SignHom { s1: -1, s2: 1 },
        SignHom { s1: 1, s2: -1 },
        SignHom { s1: -1, s2: -1 },
    ];

    /// Panics unless both signs are ±1.
    pub fn new(s1: i8, s2: i8) -> SignHom {
        assert!(s1.abs() == 1 && s2.abs() == 1, "signs must be ±1");
        SignHom { s1, s2 }
    }

    pub fn signs(self) -> (i8, i8) {
        (self.s1, self.s2)
    }

    /// ε(u) = s1^{u_x} · s2^{u_y}.
    pub fn evaluate(self, u: LatticeVector) -> i8 {
        let f1 = if self.s1 < 0 && u.x.rem_euclid(2) == 1 {
            -1
        } else {
            1
        };
        let f2 = if self.s2 < 0 && u.y.rem_euclid(2) == 1 {
            -1
        } else {
            1
        };
        f1 * f2
    }

    /// The 2-torsion point t_ε = (s1, s2) of the real torus.
    pub fn torus_point(self) -> (f64, f64) {
        (self.s1 as f64, self.s2 as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GluingRule {
    /// Identify F_ε and F_ε' when ε and ε' agree on the subgroup M_F
    /// parallel to F.
    ParallelSubgroup,
    /// Identify them when ε and ε' agree on M ∩ Aff(F).
    AffineSpan,
}

/// One identification class of edge copies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    pub ray: usize,
    /// ε(rot90(v_i)) for every member.
    pub sign: i8,
    pub members: Vec<SignHom>,
}

/// A 2-dimensional cell complex with integer boundary maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    edge_classes: Vec<EdgeClass>,
    /// Signed edge incidences around each face, in boundary order.
    faces: Vec<Vec<(usize, i64)>>,
}

impl CellComplex {
    /// Assembles a complex from explicit cells. Edges are (tail, head).
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, faces: Vec<Vec<(usize, i64)>>) -> Self {
        assert!(edges.iter().all(|&(t, h)| t < vertices && h < vertices));
        assert!(faces.iter().flatten().all(|&(e, _)| e < edges.len()));
        CellComplex {
            vertices,
            edges,
            edge_classes: Vec::new(),
            faces,
        }
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices, self.edges.len(), self.faces.len())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<(usize, i64)>] {
        &self.faces
    }

    pub fn edge_classes(&self) -> &[EdgeClass] {
        &self.edge_classes
    }

    /// ∂1 as a vertices × edges matrix.
    pub fn boundary1(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.edges.len()]; self.vertices];
        for (j, &(tail, head)) in self.edges.iter().enumerate() {
            m[head][j] += 1;
            m[tail][j] -= 1;
        }
        m
    }

    /// ∂2 as an edges × faces matrix.
    pub fn boundary2(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.faces.len()]; self.edges.len()];
        for (j, face) in self.faces.iter().enumerate() {
            for &(e, s) in face {
                m[e][j] += s;
            }
        }
        m
    }

    /// ∂1 ∘ ∂2 = 0.
    pub fn is_chain_complex(&self) -> bool {
        let d1 = self.boundary1();
        let d2 = self.boundary2();
        (0..self.vertices).all(|v| {
            (0..self.faces.len()).all(|f| {
                (0..self.edges.len())
                    .map(|e| d1[v][e] * d2[e][f])
                    .sum::<i64>()
                    == 0
            })
        })
    }

    /// Every edge is used exactly twice, counted with multiplicity, by the
    /// face boundaries.
    pub fn is_closed_surface(&self) -> bool {
        let mut uses = vec![0i64; self.edges.len()];
        for &(e, s) in self.faces.iter().flatten() {
            uses[e] += s.abs();
        }
        uses.iter().all(|&u| u == 2)
    }

    /// The 1-skeleton is connected.
    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        (0..self.vertices).all(|v| find(&mut parent, v) == root)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Wire form. Face boundaries list 1-based edge numbers, negated where
    /// the edge is traversed against its direction.
    pub fn to_json(&self) -> serde_json::Value {
        let faces: Vec<Vec<i64>> = self
            .faces
            .iter()
            .map(|f| {
                f.iter()
                    .map(|&(e, s)| s.signum() * (e as i64 + 1))
                    .collect()
            })
            .collect();
        serde_json::json!({
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|&(t, h)| [t, h]).collect::<Vec<_>>(),
            "faces": faces,
        })
    }

    /// Graphviz rendering of the 1-skeleton, edges labelled (ray, sign).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph complex {\n");
        for v in 0..self.vertices {
            let _ = writeln!(out, "  w{v};");
        }
        for (j, &(t, h)) in self.edges.iter().enumerate() {
            let label = match self.edge_classes.get(j) {
                Some(c) => format!("({}, {})", c.ray, if c.sign > 0 { "+" } else { "-" }),
                None => format!("e{j}"),
            };
            let _ = writeln!(out, "  w{t} -- w{h} [label=\"{label}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Numbers identification classes by first appearance.
struct Classes<K> {
    ids: HashMap<K, usize>,
}

impl<K: Hash + Eq> Classes<K> {
    fn new() -> Self {
        Classes {
            ids: HashMap::new(),
        }
    }

    /// Returns the class id and whether it is new.
    fn id(&mut self, key: K) -> (usize, bool) {
        let next = self.ids.len();
        match self.ids.get(&key) {
            Some(&id) => (id, false),
            None => {
                self.ids.insert(key, next);
                (next, true)
            }
        }
    }
}

/// Glues the four copies given per-cell equivalence keys: copies of a cell
/// are identified exactly when their keys agree.
fn glue<VK, EK>(
    fan: &Fan,
    vertex_key: impl Fn(usize, SignHom) -> VK,
    edge_key: impl Fn(usize, SignHom) -> EK,
) -> CellComplex
where
    VK: Hash + Eq,
    EK: Hash + Eq,
{
    let d = fan.len();
    let mut vertex_ids = Classes::new();
    // vertex_of[i][k]: class of the copy of w_i in P_{ALL[k]}.
    let vertex_of: Vec<[usize; 4]> = (0..d)
        .map(|i| SignHom::ALL.map(|eps| vertex_ids.id((i, vertex_key(i, eps))).0))
        .collect();
    let vertices = vertex_ids.ids.len();

    let mut edge_ids = Classes::new();
    let mut edges = Vec::new();
    let mut edge_classes: Vec<EdgeClass> = Vec::new();
    let mut edge_of = vec![[0usize; 4]; d];
    for i in 0..d {
        let u = fan.rays()[i].rot90();
        for (k, &eps) in SignHom::ALL.iter().enumerate() {
            let (id, fresh) = edge_ids.id((i, edge_key(i, eps)));
            let ends = (vertex_of[(i + d - 1) % d][k], vertex_of[i][k]);
            if fresh {
                edges.push(ends);
                edge_classes.push(EdgeClass {
                    ray: i,
                    sign: eps.evaluate(u),
                    members: vec![eps],
                });
            } else {
                assert_eq!(edges[id], ends, "identified edges must share endpoints");
                edge_classes[id].members.push(eps);
            }
            edge_of[i][k] = id;
        }
    }

    let faces = (0..SignHom::ALL.len())
        .map(|k| (0..d).map(|i| (edge_of[i][k], 1)).collect())
        .collect();

    CellComplex {
        vertices,
        edges,
        edge_classes,
        faces,
    }
}

/// The complex of X(ℝ) read off the fan alone.
///
/// All copies of a vertex are identified (its cone has trivial
/// perpendicular lattice), copies of E_i are identified when ε agrees on
/// rot90(v_i), and the four 2-cells stay distinct. Edge class (i, s) is
/// numbered 2i for s = +1 and 2i + 1 for s = -1.
pub fn build_real_complex(fan: &Fan) -> CellComplex {
    glue(fan, |_, _| (), |i, eps| eps.evaluate(fan.rays()[i].rot90()))
}

/// The same gluing computed from an explicit polygon, under either rule.
pub fn build_real_complex_from_polytope(
    fan: &Fan,
    polygon: &LatticePolygon,
    rule: GluingRule,
) -> Result<CellComplex> {
    if polygon.fan() != fan || polygon.offsets().len() != fan.len() {
        return Err(Error::PolygonFanMismatch);
    }
    let vertices = polygon.vertices();
    let d = fan.len();
    // Normal direction of each edge line: rot90(v_i) spans M_F.
    let parallel = |i: usize| fan.rays()[i].rot90();
    let complex = match rule {
        GluingRule::ParallelSubgroup => {
            glue(fan, |_, _| (), |i, eps: SignHom| eps.evaluate(parallel(i)))
        }
        GluingRule::AffineSpan => glue(
            fan,
            |i, eps: SignHom| eps.evaluate(vertices[i]),
            // Edge i has endpoints vertices[i-1], vertices[i]; agreement on
            // M_F and on one lattice point of the line is agreement on the
            // whole coset M ∩ Aff(F).
            |i, eps: SignHom| (eps.evaluate(parallel(i)), eps.evaluate(vertices[i])),
        ),
    };
    debug_assert!(vertices.len() == d);
    Ok(complex)
}

/// Neighbourhood of the invariant circle of a ray inside X(ℝ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NeighborhoodType {
    Cylinder,
    MoebiusBand,
}

/// Möbius band exactly when the curve's self-intersection is odd.
pub fn tubular_neighborhood(fan: &Fan, i: usize) -> Result<NeighborhoodType> {
    if i >= fan.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: fan.len(),
        });
    }
    Ok(if fan.self_intersections()[i].rem_euclid(2) == 1 {
        NeighborhoodType::MoebiusBand
    } else {
        NeighborhoodType::Cylinder
    })
}
