//! Virtual linking numbers and the graphs derived from them.
//!
//! Entry `l[i][j]` of the linking matrix counts, with sign, the crossings
//! where component `j+1` passes over component `i+1`. The two numbers
//! attached to an ordered pair of components are independent for virtual
//! links; the matrix is symmetric whenever the diagram is classical.
//!
//! The linking graph has a vertex for each component and an edge wherever
//! either of the two numbers between a pair is nonzero. A sublink is
//! inseparable when its own linking graph is connected (vacuously so for
//! one component) and has no cut vertex.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::diagram::{LinkDiagram, Role};
use crate::error::{Error, Result};

/// The matrix of virtual linking numbers of a diagram. Indices are
/// 0-based in the API; components are numbered from 1 in rendered output.
///
/// Orientation, once more, because transposing it is the classic bug:
/// `get(i, j)` counts crossings where component `j+1` is the OVER strand
/// and component `i+1` the under strand. Row `i` therefore lists what
/// passes over component `i+1`, which is exactly the exponent vector of
/// the word acting on that component's colors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkingMatrix {
    l: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    /// Wraps raw rows. Panics unless the matrix is square with zero
    /// diagonal; intended for matrices produced by this crate or tests.
    pub fn from_rows(l: Vec<Vec<i64>>) -> LinkingMatrix {
        for (i, row) in l.iter().enumerate() {
            assert_eq!(row.len(), l.len(), "linking matrix must be square");
            assert_eq!(row[i], 0, "linking matrix diagonal must be zero");
        }
        LinkingMatrix { l }
    }

    /// Number of components.
    pub fn mu(&self) -> usize {
        self.l.len()
    }

    /// Signed count of crossings where component `j+1` passes over
    /// component `i+1`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.l[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.l
    }

    /// Whether the matrix is symmetric, as it must be for a diagram that
    /// is claimed to be classical. Classicality itself is never checked
    /// here; this only reports the symmetry obstruction.
    pub fn is_classical_consistent(&self) -> bool {
        let n = self.mu();
        (0..n).all(|i| (i + 1..n).all(|j| self.l[i][j] == self.l[j][i]))
    }
}

impl Serialize for LinkingMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LinkingMatrix", 2)?;
        st.serialize_field("mu", &self.mu())?;
        st.serialize_field("l", &self.l)?;
        st.end()
    }
}

/// Computes the linking matrix of a diagram. Self-crossings of a
/// component never contribute.
pub fn linking_matrix(d: &LinkDiagram) -> LinkingMatrix {
    let mu = d.mu();
    let mut l = vec![vec![0i64; mu]; mu];
    let mut over: BTreeMap<u32, (usize, i8)> = BTreeMap::new();
    let mut under: BTreeMap<u32, usize> = BTreeMap::new();
    for (c, comp) in d.components().iter().enumerate() {
        for p in comp {
            match p.role {
                Role::Over => {
                    over.insert(p.label, (c, p.sign));
                }
                Role::Under => {
                    under.insert(p.label, c);
                }
            }
        }
    }
    for (label, &(oc, sign)) in &over {
        let uc = under[label];
        if oc != uc {
            l[uc][oc] += i64::from(sign);
        }
    }
    LinkingMatrix { l }
}

/// An undirected simple graph on 1-based component labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingGraph {
    pub vertices: BTreeSet<usize>,
    /// Edges as ordered pairs `(min, max)`.
    pub edges: BTreeSet<(usize, usize)>,
}

impl LinkingGraph {
    fn adjacency(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &self.vertices {
            adj.insert(v, Vec::new());
        }
        for &(a, b) in &self.edges {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        adj
    }
}

/// The linking graph of a matrix: vertices `1..=mu`, an edge between two
/// components when either linking number between them is nonzero.
pub fn linking_graph(m: &LinkingMatrix) -> LinkingGraph {
    sub_linking_graph(m, &(1..=m.mu()).collect::<Vec<_>>())
}

/// The linking graph restricted to a sublink, given by 1-based component
/// labels.
pub fn sub_linking_graph(m: &LinkingMatrix, sublink: &[usize]) -> LinkingGraph {
    let vertices: BTreeSet<usize> = sublink.iter().copied().collect();
    let mut edges = BTreeSet::new();
    for &a in &vertices {
        for &b in &vertices {
            if a < b && (m.get(a - 1, b - 1) != 0 || m.get(b - 1, a - 1) != 0) {
                edges.insert((a, b));
            }
        }
    }
    LinkingGraph { vertices, edges }
}

/// Connected components as sorted vertex lists, ordered by least vertex.
pub fn connected_components(g: &LinkingGraph) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut classes = Vec::new();
    for &start in &g.vertices {
        if seen.contains(&start) {
            continue;
        }
        let mut class = vec![start];
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for &w in &adj[&v] {
                if seen.insert(w) {
                    class.push(w);
                    stack.push(w);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// Cut vertices of the graph, sorted ascending: vertices whose removal
/// increases the number of connected components.
pub fn articulation_points(g: &LinkingGraph) -> Vec<usize> {
    let adj = g.adjacency();
    let mut disc: BTreeMap<usize, usize> = BTreeMap::new();
    let mut low: BTreeMap<usize, usize> = BTreeMap::new();
    let mut cut: BTreeSet<usize> = BTreeSet::new();
    let mut time = 0usize;

    // Iterative DFS with an explicit stack of (vertex, parent, neighbor
    // cursor). A non-root vertex is a cut vertex when some DFS child
    // cannot reach above it; a root is one when it has two DFS children.
    for &root in &g.vertices {
        if disc.contains_key(&root) {
            continue;
        }
        let mut root_children = 0usize;
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        disc.insert(root, time);
        low.insert(root, time);
        time += 1;
        loop {
            let Some(&mut (v, parent, cursor)) = stack.last_mut() else {
                break;
            };
            if cursor < adj[&v].len() {
                stack.last_mut().unwrap().2 += 1;
                let w = adj[&v][cursor];
                if !disc.contains_key(&w) {
                    disc.insert(w, time);
                    low.insert(w, time);
                    time += 1;
                    stack.push((w, Some(v), 0));
                } else if Some(w) != parent {
                    let lw = disc[&w];
                    let lv = low.get_mut(&v).unwrap();
                    *lv = (*lv).min(lw);
                }
            } else {
                stack.pop();
                if let Some(&(p, pparent, _)) = stack.last() {
                    let lv = low[&v];
                    let lp = low.get_mut(&p).unwrap();
                    *lp = (*lp).min(lv);
                    if pparent.is_none() {
                        root_children += 1;
                    } else if lv >= disc[&p] {
                        cut.insert(p);
                    }
                }
            }
        }
        if root_children >= 2 {
            cut.insert(root);
        }
    }
    cut.into_iter().collect()
}

/// Whether the sublink given by 1-based labels is inseparable: its
/// linking graph is connected (a single component is vacuously so) and
/// has no cut vertex.
pub fn is_inseparable(m: &LinkingMatrix, sublink: &[usize]) -> bool {
    assert!(!sublink.is_empty(), "sublink must be nonempty");
    assert!(
        sublink.iter().all(|&v| 1 <= v && v <= m.mu()),
        "sublink labels must be within 1..=mu"
    );
    let g = sub_linking_graph(m, sublink);
    connected_components(&g).len() <= 1 && articulation_points(&g).is_empty()
}

/// All inseparable sublinks, as sorted label lists in lexicographic
/// order. Enumerates every nonempty subset, so the component count is
/// capped by `caps.max_subset_mu`.
pub fn inseparable_sublinks(m: &LinkingMatrix, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let mu = m.mu();
    if mu > caps.max_subset_mu {
        return Err(Error::CapExceeded(format!(
            "subset enumeration over {mu} components (cap {})",
            caps.max_subset_mu
        )));
    }
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << mu) {
        let subset: Vec<usize> = (0..mu).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        if is_inseparable(m, &subset) {
            out.push(subset);
        }
    }
    out.sort();
    Ok(out)
}
