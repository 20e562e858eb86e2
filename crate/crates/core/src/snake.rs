//! Snake graphs of continued fractions and their perfect matchings.
//!
//! A snake graph with `d` tiles is stored in a canonical embedding: tile 1
//! sits at the origin and each following tile is attached to the east
//! (`Right`) or to the north (`Up`) of its predecessor, the first step
//! always being `Right`. Alongside the step word we keep the signs of the
//! interior edges under a sign function (north and west edges of a tile
//! share a sign, south and east edges carry the opposite one). Two
//! consecutive interior edges have the same sign exactly when the snake
//! turns between them, so either word determines the other.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::cfrac::{type_sequence, EvenCF, PositiveCF, Sign};
use crate::error::{Error, Result};
use crate::laurent::{YPoly, MAX_TILES};

/// Default cap on the number of matchings [`enumerate_matchings`] visits.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Right,
    Up,
}

impl Step {
    fn swap(self) -> Step {
        match self {
            Step::Right => Step::Up,
            Step::Up => Step::Right,
        }
    }

    fn letter(self) -> char {
        match self {
            Step::Right => 'R',
            Step::Up => 'U',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SnakeGraph {
    d: usize,
    steps: Vec<Step>,
    edge_signs: Vec<Sign>,
    first_sign: Sign,
}

/// A unit edge between two lattice points, lower/left endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: (i32, i32),
    pub to: (i32, i32),
}

impl Edge {
    fn new(a: (i32, i32), b: (i32, i32)) -> Edge {
        let (from, to) = if a <= b { (a, b) } else { (b, a) };
        Edge { from, to }
    }
}

/// A perfect matching: indices into [`SnakeGraph::edges`] and the set of
/// tiles (numbered from 1) enclosed between it and the minimal matching.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    pub edges: Vec<usize>,
    pub height: Vec<usize>,
}

impl SnakeGraph {
    /// The graph with two vertices and one edge.
    pub fn single_edge() -> SnakeGraph {
        SnakeGraph {
            d: 0,
            steps: Vec::new(),
            edge_signs: Vec::new(),
            first_sign: Sign::Plus,
        }
    }

    /// Graph with `edge_signs.len() + 1` tiles whose interior edges carry the
    /// given signs; `first_sign` is the sign of the distinguished edge `e_0`
    /// of the first tile.
    pub fn from_sign_word(first_sign: Sign, edge_signs: Vec<Sign>) -> SnakeGraph {
        let mut steps: Vec<Step> = Vec::with_capacity(edge_signs.len());
        for (i, s) in edge_signs.iter().enumerate() {
            let step = match steps.last() {
                None => Step::Right,
                Some(&prev) if edge_signs[i - 1] == *s => prev.swap(),
                Some(&prev) => prev,
            };
            steps.push(step);
        }
        SnakeGraph {
            d: edge_signs.len() + 1,
            steps,
            edge_signs,
            first_sign,
        }
    }

    /// Graph with the given step word (at least one tile). A word starting
    /// with `Up` is reflected so that the first step is `Right`. The edge `e_0`
    /// is the south edge of the first tile.
    pub fn from_steps(steps: &[Step]) -> SnakeGraph {
        let flip = steps.first() == Some(&Step::Up);
        let steps: Vec<Step> = steps.iter().map(|&s| if flip { s.swap() } else { s }).collect();
        let mut edge_signs = Vec::with_capacity(steps.len());
        for (i, s) in steps.iter().enumerate() {
            let sign = match edge_signs.last() {
                None => Sign::Plus,
                Some(&prev) if steps[i - 1] != *s => prev,
                Some(&prev) => prev.flip(),
            };
            edge_signs.push(sign);
        }
        let first_sign = edge_signs.first().copied().unwrap_or(Sign::Plus);
        SnakeGraph {
            d: steps.len() + 1,
            steps,
            edge_signs,
            first_sign,
        }
    }

    /// Parses a word over `{R, U}`; the empty word is the single tile.
    pub fn from_step_word(word: &str) -> Result<SnakeGraph> {
        let steps = word
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'R' | 'r' => Ok(Step::Right),
                'U' | 'u' => Ok(Step::Up),
                _ => Err(Error::parse(i, format!("expected R or U, found {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SnakeGraph::from_steps(&steps))
    }

    pub fn tile_count(&self) -> usize {
        self.d
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn edge_signs(&self) -> &[Sign] {
        &self.edge_signs
    }

    pub fn first_sign(&self) -> Sign {
        self.first_sign
    }

    pub fn step_word(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }

    /// Whether `e_0` is the south edge (rather than the west edge) of tile 1.
    pub fn e0_is_south(&self) -> bool {
        // with a first step to the right, the south edge of tile 1 shares the
        // sign of its east edge e_1
        self.edge_signs.first().is_none_or(|s| *s == self.first_sign)
    }

    /// Lower-left corners of the tiles.
    pub fn tile_positions(&self) -> Vec<(i32, i32)> {
        let mut pos = Vec::with_capacity(self.d);
        if self.d == 0 {
            return pos;
        }
        let (mut x, mut y) = (0, 0);
        pos.push((x, y));
        for s in &self.steps {
            match s {
                Step::Right => x += 1,
                Step::Up => y += 1,
            }
            pos.push((x, y));
        }
        pos
    }

    fn layout(&self) -> Layout {
        Layout::new(self)
    }

    /// All edges of the graph, in a fixed order.
    pub fn edges(&self) -> Vec<Edge> {
        self.layout().edges
    }
}

impl fmt::Display for SnakeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            f.write_str("single edge")
        } else {
            write!(f, "{} tiles [{}]", self.d, self.step_word())
        }
    }
}

/// Edge bookkeeping of the canonical embedding.
struct Layout {
    edges: Vec<Edge>,
    // per tile: [south, east, north, west]
    tiles: Vec<[usize; 4]>,
}

impl Layout {
    fn new(g: &SnakeGraph) -> Layout {
        if g.d == 0 {
            return Layout {
                edges: vec![Edge::new((0, 0), (1, 0))],
                tiles: Vec::new(),
            };
        }
        let mut edges: Vec<Edge> = Vec::new();
        let mut index = std::collections::HashMap::new();
        let mut id = |e: Edge, edges: &mut Vec<Edge>| {
            *index.entry(e).or_insert_with(|| {
                edges.push(e);
                edges.len() - 1
            })
        };
        let tiles = g
            .tile_positions()
            .into_iter()
            .map(|(x, y)| {
                [
                    id(Edge::new((x, y), (x + 1, y)), &mut edges),
                    id(Edge::new((x + 1, y), (x + 1, y + 1)), &mut edges),
                    id(Edge::new((x, y + 1), (x + 1, y + 1)), &mut edges),
                    id(Edge::new((x, y), (x, y + 1)), &mut edges),
                ]
            })
            .collect();
        Layout { edges, tiles }
    }

    /// The all-boundary matching containing `e_0`.
    fn minimal_matching(&self, g: &SnakeGraph) -> Vec<usize> {
        if g.d == 0 {
            return vec![0];
        }
        let mut uses = vec![0u8; self.edges.len()];
        for t in &self.tiles {
            for &e in t {
                uses[e] += 1;
            }
        }
        let boundary: Vec<usize> = (0..self.edges.len()).filter(|&e| uses[e] == 1).collect();
        let e0 = if g.e0_is_south() { self.tiles[0][0] } else { self.tiles[0][3] };

        // walk the boundary cycle starting with e0, keeping every other edge
        let mut chosen = vec![e0];
        let mut prev = e0;
        let mut at = self.edges[e0].to;
        let mut parity = 0;
        loop {
            let next = boundary
                .iter()
                .copied()
                .find(|&e| e != prev && (self.edges[e].from == at || self.edges[e].to == at))
                .expect("boundary of a snake graph is a cycle");
            if next == e0 {
                break;
            }
            parity ^= 1;
            if parity == 0 {
                chosen.push(next);
            }
            at = if self.edges[next].from == at { self.edges[next].to } else { self.edges[next].from };
            prev = next;
        }
        chosen.sort_unstable();
        chosen
    }
}

/// Snake graph of a positive continued fraction: `d = a_1 + ... + a_n - 1`
/// tiles, the sign sequence `(e_0, ..., e_d)` consisting of alternating runs
/// of lengths `a_1, ..., a_n` starting with `+`.
pub fn snake_from_positive(cf: &PositiveCF) -> Result<SnakeGraph> {
    let runs = cf.small_entries()?;
    let total: usize = runs.iter().sum();
    if total == 1 {
        return Ok(SnakeGraph::single_edge());
    }
    let mut seq = Vec::with_capacity(total);
    let mut sign = Sign::Plus;
    for &len in &runs {
        seq.extend(std::iter::repeat(sign).take(len));
        sign = sign.flip();
    }
    let first = seq[0];
    let interior = seq[1..seq.len() - 1].to_vec();
    Ok(SnakeGraph::from_sign_word(first, interior))
}

/// Snake graph of an even continued fraction, glued from the zigzag pieces
/// of each entry.
pub fn snake_from_even(cf: &EvenCF) -> Result<SnakeGraph> {
    let sizes = cf.small_entries()?;
    let types = type_sequence(cf);
    let types = types.types();
    let signs = cf.signs();
    let mut word = Vec::new();
    for i in 0..sizes.len() {
        word.extend(std::iter::repeat(types[i]).take(sizes[i] - 2));
        if i + 1 < sizes.len() {
            if signs[i] == signs[i + 1] {
                // connecting tile between the two pieces
                word.push(types[i]);
                word.push(types[i + 1]);
            } else {
                // pieces glued along the north edge of the last tile
                word.push(types[i].flip());
            }
        }
    }
    Ok(SnakeGraph::from_sign_word(signs[0], word))
}

/// `Σ|b_i| - 1 - (number of sign changes in b_1, ..., b_m)`.
pub fn tile_count_even(cf: &EvenCF) -> Result<usize> {
    let total: usize = cf.small_entries()?.iter().sum();
    Ok(total - 1 - crate::cfrac::sign_changes(cf))
}

/// Equality of step words up to reversal and the reflection swapping
/// `Right` and `Up`.
pub fn isomorphic(g: &SnakeGraph, h: &SnakeGraph) -> bool {
    if g.d != h.d {
        return false;
    }
    if g.d <= 1 {
        return true;
    }
    let w = &g.steps;
    let swapped: Vec<Step> = w.iter().map(|s| s.swap()).collect();
    let candidates = [
        w.clone(),
        w.iter().rev().copied().collect(),
        swapped.clone(),
        swapped.into_iter().rev().collect(),
    ];
    candidates.iter().any(|c| c == &h.steps)
}

/// Number of perfect matchings by a two-state transfer along the tiles.
///
/// `full` counts matchings of the first `k` tiles, `open` those of the first
/// `k` tiles with both endpoints of the edge shared with tile `k + 1` removed.
pub fn count_matchings(g: &SnakeGraph) -> BigInt {
    if g.d == 0 {
        return BigInt::one();
    }
    let mut full = BigInt::from(2);
    let mut open = BigInt::one();
    for k in 1..g.d {
        let next_full = &full + &open;
        if k + 1 < g.d {
            let straight = g.steps[k - 1] == g.steps[k];
            if straight {
                open = full;
            }
        }
        full = next_full;
    }
    full
}

struct State {
    edges: Vec<u64>,
    height: Vec<u64>,
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn toggle(set: &mut [u64], i: usize) {
    set[i / 64] ^= 1 << (i % 64);
}

fn bits(set: &[u64]) -> Vec<usize> {
    (0..set.len() * 64).filter(|&i| bit(set, i)).collect()
}

/// All perfect matchings, found by breadth-first flip search from the
/// minimal matching. Flipping tile `i` exchanges its two horizontal edges
/// for its two vertical ones (or back) and toggles `i` in the height set.
pub fn enumerate_matchings(g: &SnakeGraph, budget: u64) -> Result<Vec<Matching>> {
    let count = count_matchings(g);
    if count > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            budget,
            count: count.to_string(),
        });
    }
    let layout = g.layout();
    let edge_words = layout.edges.len().div_ceil(64);
    let tile_words = g.d.div_ceil(64).max(1);

    let mut start = State {
        edges: vec![0; edge_words],
        height: vec![0; tile_words],
    };
    for e in layout.minimal_matching(g) {
        toggle(&mut start.edges, e);
    }

    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(start.edges.clone());
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(state) = queue.pop_front() {
        for (i, &[s, e, n, w]) in layout.tiles.iter().enumerate() {
            let horizontal = bit(&state.edges, s) && bit(&state.edges, n);
            let vertical = bit(&state.edges, e) && bit(&state.edges, w);
            if !(horizontal || vertical) {
                continue;
            }
            let mut edges = state.edges.clone();
            for x in [s, e, n, w] {
                toggle(&mut edges, x);
            }
            if seen.insert(edges.clone()) {
                let mut height = state.height.clone();
                toggle(&mut height, i);
                queue.push_back(State { edges, height });
            }
        }
        out.push(Matching {
            edges: bits(&state.edges),
            height: bits(&state.height).into_iter().map(|i| i + 1).collect(),
        });
    }
    Ok(out)
}

/// F-polynomial: the sum of the height monomials of all perfect matchings.
pub fn f_polynomial(g: &SnakeGraph) -> Result<YPoly> {
    f_polynomial_with_budget(g, DEFAULT_BUDGET)
}

pub fn f_polynomial_with_budget(g: &SnakeGraph, budget: u64) -> Result<YPoly> {
    if g.d > MAX_TILES {
        return Err(Error::TooManyTiles(g.d));
    }
    let mut poly = YPoly::zero();
    for m in enumerate_matchings(g, budget)? {
        poly.add_monomial(YPoly::mask(&m.height)?, BigInt::one());
    }
    Ok(poly)
}

/// Unit-grid drawing of the canonical embedding, tiles numbered.
pub fn render_ascii(g: &SnakeGraph) -> String {
    if g.d == 0 {
        return "+---+\n".into();
    }
    let pos = g.tile_positions();
    let width = pos.iter().map(|p| p.0).max().unwrap() as usize + 1;
    let height = pos.iter().map(|p| p.1).max().unwrap() as usize + 1;
    let cols = 4 * width + 1;
    let rows = 2 * height + 1;
    let mut canvas = vec![vec![b' '; cols]; rows];
    for (i, &(x, y)) in pos.iter().enumerate() {
        let left = 4 * x as usize;
        let top = 2 * (height - 1 - y as usize);
        for row in [top, top + 2] {
            canvas[row][left] = b'+';
            canvas[row][left + 4] = b'+';
            for c in &mut canvas[row][left + 1..left + 4] {
                *c = b'-';
            }
        }
        canvas[top + 1][left] = b'|';
        canvas[top + 1][left + 4] = b'|';
        let label = (i + 1).to_string();
        let start = left + 1 + (3 - label.len().min(3)) / 2;
        for (k, b) in label.bytes().take(3).enumerate() {
            canvas[top + 1][start + k] = b;
        }
    }
    let mut out = String::new();
    for row in canvas {
        out.push_str(String::from_utf8(row).unwrap().trim_end());
        out.push('\n');
    }
    out
}
