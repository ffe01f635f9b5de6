//! The Bass-Serre tree of the segment splitting G_i ∗_{K_i} G_{i+1}.
//!
//! Vertices are cosets `gA` and `gB`, edges are cosets `gC`. A vertex is
//! identified by the transversal normal form of its representative: the
//! alternating list of coset indices `r_1 r_2 ... r_n` with the last factor
//! not on the vertex's own side. Coset transversals are discovered by a
//! Schreier walk over each factor, with `C`-orbits used for deduplication.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::amalgam::{Side, Syllable, Word};
use crate::charmap::VMap;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::perm::ShiftedPermutation;
use crate::semidirect::{enumerate_g_capped, enumerate_k_capped, order_g, order_k, GElement};

/// Left cosets `xC` of `C = K_i` in one factor of the segment at `i`.
#[derive(Debug)]
pub struct CosetTable {
    segment: u32,
    side: Side,
    reps: Vec<GElement>,
    index: HashMap<u128, u32>,
}

impl CosetTable {
    pub fn build(i: u32, side: Side, limits: &Limits, exec: Exec) -> Result<CosetTable> {
        let level = side.level(i);
        let order = order_g(level);
        if order > limits.coset_table_max as u128 {
            return Err(Error::Budget(format!(
                "coset table for G_{level} needs {order} elements (budget {})",
                limits.coset_table_max
            )));
        }
        let c: Vec<GElement> = enumerate_k_capped(i, u32::MAX)?
            .map(|k| k.transfer_k(i, level))
            .collect::<Result<_>>()?;
        let l = level as i64;
        let mut gens = vec![GElement::new(
            level,
            VMap::point(-l),
            ShiftedPermutation::identity(),
        )?];
        for j in -l..l {
            gens.push(GElement::new(
                level,
                VMap::trivial(),
                ShiftedPermutation::transposition(j, j + 1),
            )?);
        }

        let key = |x: &GElement| x.dense_key().expect("factor window fits the dense key");
        let mut table = CosetTable {
            segment: i,
            side,
            reps: Vec::new(),
            index: HashMap::new(),
        };
        let cover = |table: &mut CosetTable, x: GElement| {
            let k = table.reps.len() as u32;
            let keys = par::map(exec, &c, |c| key(&x.mul_unchecked(c)));
            for kk in keys {
                table.index.insert(kk, k);
            }
            table.reps.push(x);
        };
        cover(&mut table, GElement::identity(level));
        let mut head = 0;
        while head < table.reps.len() {
            let r = table.reps[head].clone();
            head += 1;
            for g in &gens {
                let x = g.mul_unchecked(&r);
                if !table.index.contains_key(&key(&x)) {
                    cover(&mut table, x);
                }
            }
        }
        debug_assert_eq!(table.index.len() as u128, order);
        debug_assert_eq!(table.reps.len() as u128 * order_k(i), order);
        Ok(table)
    }

    /// Index of the coset containing `x`; the trivial coset is 0.
    pub fn coset_of(&self, x: &GElement) -> u32 {
        debug_assert_eq!(x.level(), self.side.level(self.segment));
        self.index[&x.dense_key().expect("factor window fits the dense key")]
    }

    pub fn rep(&self, k: u32) -> &GElement {
        &self.reps[k as usize]
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn side(&self) -> Side {
        self.side
    }
}

type TableCache = Mutex<HashMap<(u32, Side), Arc<CosetTable>>>;

fn table_cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Process-wide cached coset table.
pub fn coset_table(i: u32, side: Side, limits: &Limits, exec: Exec) -> Result<Arc<CosetTable>> {
    let order = order_g(side.level(i));
    if order > limits.coset_table_max as u128 {
        return Err(Error::Budget(format!(
            "coset table for G_{} needs {order} elements (budget {})",
            side.level(i),
            limits.coset_table_max
        )));
    }
    if let Some(t) = table_cache().lock().unwrap().get(&(i, side)) {
        return Ok(Arc::clone(t));
    }
    let t = Arc::new(CosetTable::build(i, side, limits, exec)?);
    table_cache()
        .lock()
        .unwrap()
        .entry((i, side))
        .or_insert_with(|| Arc::clone(&t));
    Ok(t)
}

/// `[A : C] = 2^{2i}`.
pub fn degree_a(i: u32) -> u128 {
    order_g(i) / order_k(i)
}

/// `[B : C] = 2^{2i+2} (2i+2)(2i+3)`.
pub fn degree_b(i: u32) -> u128 {
    order_g(i + 1) / order_k(i)
}

#[derive(Debug, Clone)]
pub struct TreeVertex {
    side: Side,
    path: Vec<(Side, u32)>,
    rep: Word,
}

impl PartialEq for TreeVertex {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side && self.path == other.path
    }
}

impl Eq for TreeVertex {}

impl std::hash::Hash for TreeVertex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.side.hash(state);
        self.path.hash(state);
    }
}

impl TreeVertex {
    pub fn side(&self) -> Side {
        self.side
    }

    /// Coset representative: the vertex is `rep·A` or `rep·B`.
    pub fn rep(&self) -> &Word {
        &self.rep
    }

    pub fn label(&self) -> String {
        format!("{} {}", self.side, self.rep)
    }

    fn key(&self) -> (Side, Vec<(Side, u32)>) {
        (self.side, self.path.clone())
    }
}

/// Equality of vertices decided by word reduction: same side and
/// `rep1⁻¹ rep2` lies in that side's factor.
pub fn same_vertex_by_reduction(u: &TreeVertex, v: &TreeVertex) -> Result<bool> {
    if u.side != v.side {
        return Ok(false);
    }
    Ok(u.rep.winv().wmul(&v.rep)?.lies_in(u.side))
}

/// Handle on the tree of the segment at level `i`.
#[derive(Debug, Clone)]
pub struct BassSerreTree {
    level: u32,
    limits: Limits,
    exec: Exec,
}

impl BassSerreTree {
    pub fn new(level: u32, limits: &Limits, exec: Exec) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidElement {
                level,
                reason: "segment levels start at 1".into(),
            });
        }
        Ok(BassSerreTree {
            level,
            limits: limits.clone(),
            exec,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn table(&self, side: Side) -> Result<Arc<CosetTable>> {
        coset_table(self.level, side, &self.limits, self.exec)
    }

    pub fn base(&self, side: Side) -> TreeVertex {
        TreeVertex {
            side,
            path: Vec::new(),
            rep: Word::empty(self.level),
        }
    }

    fn vertex_from_path(&self, side: Side, path: Vec<(Side, u32)>) -> Result<TreeVertex> {
        let mut syllables = Vec::with_capacity(path.len());
        for &(s, k) in &path {
            syllables.push(Syllable {
                side: s,
                element: self.table(s)?.rep(k).clone(),
            });
        }
        Ok(TreeVertex {
            side,
            path,
            rep: Word::new(self.level, syllables)?,
        })
    }

    /// The vertex `g·X` for X the factor on `side`.
    pub fn vertex_of(&self, g: &Word, side: Side) -> Result<TreeVertex> {
        if g.level() != self.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                found: g.level(),
            });
        }
        let i = self.level;
        let w = g.reduce();
        let mut carry: Option<GElement> = None;
        let mut path = Vec::with_capacity(w.len());
        for syl in w.syllables() {
            let table = self.table(syl.side)?;
            let x = match carry.take() {
                None => syl.element.clone(),
                Some(c) => c
                    .transfer_k(i, syl.side.level(i))?
                    .mul_unchecked(&syl.element),
            };
            let k = table.coset_of(&x);
            carry = Some(table.rep(k).ginv().mul_unchecked(&x));
            if k != 0 {
                path.push((syl.side, k));
            }
        }
        if path.last().map(|p| p.0) == Some(side) {
            path.pop();
        }
        self.vertex_from_path(side, path)
    }

    /// `g·v`.
    pub fn act(&self, g: &Word, v: &TreeVertex) -> Result<TreeVertex> {
        self.vertex_of(&g.wmul(&v.rep)?, v.side)
    }

    /// All neighbours of `v`, in transversal order.
    pub fn neighbors(&self, v: &TreeVertex) -> Result<Vec<TreeVertex>> {
        let table = self.table(v.side)?;
        let other = v.side.other();
        let mut out = Vec::with_capacity(table.len());
        for k in 0..table.len() as u32 {
            let mut path = v.path.clone();
            if k == 0 {
                path.pop();
            } else {
                path.push((v.side, k));
            }
            out.push(self.vertex_from_path(other, path)?);
        }
        Ok(out)
    }

    /// Degree of every vertex on `side`.
    pub fn degree(&self, side: Side) -> u128 {
        match side {
            Side::A => degree_a(self.level),
            Side::B => degree_b(self.level),
        }
    }

    /// Vertex count of the radius-`radius` ball about a vertex on `side`.
    pub fn projected_ball_size(&self, side: Side, radius: u32) -> u128 {
        let mut total: u128 = 1;
        let mut layer: u128 = 1;
        let mut s = side;
        for r in 0..radius {
            let d = self.degree(s);
            layer = layer.saturating_mul(if r == 0 { d } else { d - 1 });
            total = total.saturating_add(layer);
            s = s.other();
        }
        total
    }
}

#[derive(Debug, Clone)]
pub struct BallVertex {
    pub vertex: TreeVertex,
    pub label: String,
    pub depth: u32,
    pub parent: Option<usize>,
}

/// Finite ball in the tree, vertices sorted by printed representative.
#[derive(Debug, Clone)]
pub struct Ball {
    tree: BassSerreTree,
    radius: u32,
    center: usize,
    vertices: Vec<BallVertex>,
    edges: Vec<(usize, usize)>,
    index: HashMap<(Side, Vec<(Side, u32)>), usize>,
}

pub fn build_ball(i: u32, radius: u32) -> Result<Ball> {
    build_ball_with(i, radius, &Limits::default(), Exec::default())
}

pub fn build_ball_with(i: u32, radius: u32, limits: &Limits, exec: Exec) -> Result<Ball> {
    if i > limits.ball_max_level || radius > limits.ball_max_radius {
        return Err(Error::Budget(format!(
            "ball at level {i}, radius {radius} exceeds caps (level {}, radius {})",
            limits.ball_max_level, limits.ball_max_radius
        )));
    }
    let tree = BassSerreTree::new(i, limits, exec)?;
    let projected = tree.projected_ball_size(Side::A, radius);
    if projected > limits.ball_max_vertices as u128 {
        return Err(Error::BallTooLarge {
            projected,
            budget: limits.ball_max_vertices as u128,
        });
    }

    // BFS in discovery order; keys are canonical, so a map suffices.
    let center = tree.base(Side::A);
    let mut found: Vec<(TreeVertex, u32, Option<usize>)> = vec![(center.clone(), 0, None)];
    let mut seen: HashMap<(Side, Vec<(Side, u32)>), usize> = HashMap::new();
    seen.insert(center.key(), 0);
    let mut frontier = vec![0usize];
    for depth in 1..=radius {
        let expanded: Vec<Result<Vec<TreeVertex>>> =
            par::map(exec, &frontier, |&f| tree.neighbors(&found[f].0));
        let mut next = Vec::new();
        for (&f, nbrs) in frontier.iter().zip(expanded) {
            for n in nbrs? {
                if seen.contains_key(&n.key()) {
                    continue;
                }
                seen.insert(n.key(), found.len());
                next.push(found.len());
                found.push((n, depth, Some(f)));
            }
        }
        frontier = next;
    }

    let labels = par::map(exec, &found, |(v, _, _)| v.label());
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&x, &y| labels[x].cmp(&labels[y]));
    let mut new_id = vec![0usize; found.len()];
    for (new, &old) in order.iter().enumerate() {
        new_id[old] = new;
    }
    let mut labels: Vec<Option<String>> = labels.into_iter().map(Some).collect();
    let mut vertices: Vec<BallVertex> = Vec::with_capacity(found.len());
    for &old in &order {
        let (v, depth, parent) = &found[old];
        vertices.push(BallVertex {
            vertex: v.clone(),
            label: labels[old].take().expect("each label used once"),
            depth: *depth,
            parent: parent.map(|p| new_id[p]),
        });
    }
    let mut edges: Vec<(usize, usize)> = vertices
        .iter()
        .enumerate()
        .filter_map(|(id, v)| v.parent.map(|p| (p.min(id), p.max(id))))
        .collect();
    edges.sort_unstable();
    let index = vertices
        .iter()
        .enumerate()
        .map(|(id, v)| (v.vertex.key(), id))
        .collect();

    Ok(Ball {
        tree,
        radius,
        center: new_id[0],
        vertices,
        edges,
        index,
    })
}

impl Ball {
    pub fn tree(&self) -> &BassSerreTree {
        &self.tree
    }

    pub fn level(&self) -> u32 {
        self.tree.level
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn center(&self) -> &TreeVertex {
        &self.vertices[self.center].vertex
    }

    pub fn vertices(&self) -> &[BallVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn id_of(&self, v: &TreeVertex) -> Option<usize> {
        self.index.get(&v.key()).copied()
    }

    /// Tree distance between two ball vertices, through their common
    /// ancestor.
    pub fn distance(&self, mut a: usize, mut b: usize) -> u32 {
        let mut d = 0;
        while self.vertices[a].depth > self.vertices[b].depth {
            a = self.vertices[a].parent.expect("depth > 0");
            d += 1;
        }
        while self.vertices[b].depth > self.vertices[a].depth {
            b = self.vertices[b].parent.expect("depth > 0");
            d += 1;
        }
        while a != b {
            a = self.vertices[a].parent.expect("distinct roots impossible");
            b = self.vertices[b].parent.expect("distinct roots impossible");
            d += 2;
        }
        d
    }

    /// `d(v, g·v)`, or `None` when `g·v` lies outside the ball.
    pub fn displacement(&self, g: &Word, v: &TreeVertex) -> Result<Option<u32>> {
        let from = self.id_of(v).ok_or_else(|| Error::InvalidElement {
            level: self.level(),
            reason: "vertex not in ball".into(),
        })?;
        let image = self.tree.act(g, v)?;
        Ok(self.id_of(&image).map(|to| self.distance(from, to)))
    }

    /// Edge count is one less than vertex count and the edges connect
    /// everything.
    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if self.edges.len() + 1 != n {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.center]);
        seen[self.center] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// Degree of each vertex inside the ball.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Edge-list export: `vertex-id side rep` lines, then `edge u v` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (id, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("{id} {}\n", v.label));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("edge {u} {v}\n"));
        }
        out
    }
}

pub fn displacement(g: &Word, v: &TreeVertex, ball: &Ball) -> Result<Option<u32>> {
    ball.displacement(g, v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Elliptic,
    Loxodromic { translation_length: u32 },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Elliptic => f.write_str("elliptic"),
            Classification::Loxodromic { translation_length } => {
                write!(f, "loxodromic {translation_length}")
            }
        }
    }
}

/// Elliptic iff the cyclically reduced length is at most one; otherwise
/// the translation length equals that length.
pub fn classify(g: &Word) -> Classification {
    match g.cyclic_reduce().len() {
        0 | 1 => Classification::Elliptic,
        n => Classification::Loxodromic {
            translation_length: n as u32,
        },
    }
}

/// The geodesic ray from the base A-vertex that always steps to the child
/// with the least printed representative.
pub fn census_ray(tree: &BassSerreTree, d: u32) -> Result<Vec<TreeVertex>> {
    let mut ray = vec![tree.base(Side::A)];
    for _ in 0..d {
        let current = ray.last().expect("nonempty");
        let previous = ray.len().checked_sub(2).map(|k| ray[k].clone());
        let next = tree
            .neighbors(current)?
            .into_iter()
            .filter(|n| Some(n) != previous.as_ref())
            .min_by_key(|n| n.label())
            .expect("every vertex has degree >= 2");
        ray.push(next);
    }
    Ok(ray)
}

/// Number of elements fixing both ends of the length-`d` census ray.
pub fn joint_stabilizer_census(i: u32, d: u32) -> Result<u64> {
    joint_stabilizer_census_with(i, d, &Limits::default(), Exec::default())
}

pub fn joint_stabilizer_census_with(i: u32, d: u32, limits: &Limits, exec: Exec) -> Result<u64> {
    if i > limits.census_max_level || d > limits.census_max_depth {
        return Err(Error::Budget(format!(
            "census at level {i}, depth {d} exceeds caps (level {}, depth {})",
            limits.census_max_level, limits.census_max_depth
        )));
    }
    let tree = BassSerreTree::new(i, limits, exec)?;
    let ray = census_ray(&tree, d)?;
    let end = ray.last().expect("nonempty");
    // Stab(base A-vertex) = A; keep the elements that also fix the far end.
    let candidates: Vec<GElement> = enumerate_g_capped(i, limits.census_max_level)?.collect();
    let verdicts = par::map(exec, &candidates, |a| -> Result<bool> {
        let g = Word::single(i, a.clone())?;
        let moved = TreeVertex {
            side: end.side,
            path: Vec::new(),
            rep: g.wmul(&end.rep)?,
        };
        same_vertex_by_reduction(end, &moved)
    });
    let mut n = 0;
    for v in verdicts {
        if v? {
            n += 1;
        }
    }
    Ok(n)
}
