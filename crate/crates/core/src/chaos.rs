//! Discrete 2D chaotic maps: orbit iteration, attractor bounding,
//! largest-Lyapunov-exponent estimation and parameter-grid robustness scans.
//!
//! The Lozi map is the workhorse here: being piecewise linear it has an
//! almost-everywhere constant Jacobian, and its chaos persists over an open
//! parameter region rather than being riddled with periodic windows. The
//! Hénon map is included as the classic counterexample whose windows make it
//! unsuitable when chaos must survive parameter perturbations.

use std::ops::{Add, Mul, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orbits whose components exceed this magnitude are treated as escaped.
/// The attractors handled here are O(1)-scaled, so the bound is unambiguous.
pub const ESCAPE_BOUND: f64 = 1e6;

/// Default number of leading iterates discarded so the remainder sits on the
/// attractor.
pub const DEFAULT_TRANSIENT: usize = 1000;

/// Default orbit seed. The seed is a free input; this one sits in the basin
/// of both default maps.
pub const DEFAULT_SEED: Vec2 = Vec2 { x: 0.1, y: 0.1 };

/// A point in the plane. Map-space coordinates are dimensionless; ground
/// coordinates are meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// Axis-aligned rectangle, the concrete compact region enclosing an attractor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Box2 {
    pub min: Vec2,
    pub max: Vec2,
}

impl Box2 {
    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn center(&self) -> Vec2 {
        Vec2::new(
            0.5 * (self.min.x + self.max.x),
            0.5 * (self.min.y + self.max.y),
        )
    }

    /// Half the diagonal length; the circumscribed-circle radius about the center.
    pub fn half_diagonal(&self) -> f64 {
        0.5 * self.width().hypot(self.height())
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }
}

/// Which map family drives the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Lozi,
    Henon,
}

impl MapKind {
    /// Parameter window accepted for this family. Deliberately broad: it is a
    /// sanity region (outside it the iteration escapes immediately or the map
    /// stops being dissipative), not the chaotic region, which is established
    /// empirically by [`scan_robustness`].
    pub fn admissible_window(self) -> (std::ops::RangeInclusive<f64>, std::ops::RangeInclusive<f64>)
    {
        match self {
            MapKind::Lozi | MapKind::Henon => (0.0..=2.0, -1.0..=1.0),
        }
    }
}

/// A map family with its two parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapParams {
    pub kind: MapKind,
    pub a: f64,
    pub b: f64,
}

impl MapParams {
    pub fn new(kind: MapKind, a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParams(format!(
                "map parameters must be finite, got a={a}, b={b}"
            )));
        }
        let (a_window, b_window) = kind.admissible_window();
        if !a_window.contains(&a) || !b_window.contains(&b) {
            return Err(Error::InvalidParams(format!(
                "({a}, {b}) outside admissible window a in {a_window:?}, b in {b_window:?}"
            )));
        }
        Ok(Self { kind, a, b })
    }

    /// The fixed point on the x > 0 branch of the Lozi map, where
    /// x = 1 - a·x + b·x. Useful as a degenerate orbit seed.
    pub fn lozi_fixed_point(&self) -> Vec2 {
        let d = 1.0 + self.a - self.b;
        Vec2::new(1.0 / d, self.b / d)
    }
}

/// sign(x) with sign(0) fixed to +1 so the piecewise Jacobian is total.
fn sign_pos(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn step_unchecked(s: Vec2, p: MapParams) -> Vec2 {
    match p.kind {
        MapKind::Lozi => Vec2::new(1.0 - p.a * s.x.abs() + s.y, p.b * s.x),
        MapKind::Henon => Vec2::new(1.0 - p.a * s.x * s.x + s.y, p.b * s.x),
    }
}

/// Jacobian of the map at `s`, row-major [[j00, j01], [j10, j11]].
fn jacobian(s: Vec2, p: MapParams) -> [f64; 4] {
    match p.kind {
        MapKind::Lozi => [-p.a * sign_pos(s.x), 1.0, p.b, 0.0],
        MapKind::Henon => [-2.0 * p.a * s.x, 1.0, p.b, 0.0],
    }
}

fn escaped(s: Vec2) -> bool {
    !(s.x.is_finite() && s.y.is_finite()) || s.x.abs() > ESCAPE_BOUND || s.y.abs() > ESCAPE_BOUND
}

/// Applies one step of the map. Pure and deterministic.
pub fn step(s: Vec2, p: MapParams) -> Result<Vec2> {
    let next = step_unchecked(s, p);
    if escaped(next) {
        return Err(Error::DivergedState {
            index: 0,
            bound: ESCAPE_BOUND,
        });
    }
    Ok(next)
}

/// A finite iterate sequence with its transient prefix marked.
///
/// `states[0]` is the seed and `states[i + 1] = step(states[i], params)`
/// exactly, so any orbit can be replayed bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub states: Vec<Vec2>,
    pub transient_len: usize,
    pub params: MapParams,
    pub seed: Vec2,
}

impl Orbit {
    /// The states past the transient prefix.
    pub fn post_transient(&self) -> &[Vec2] {
        &self.states[self.transient_len.min(self.states.len())..]
    }
}

/// Iterates the map from `seed`, keeping `transient + keep` states
/// (the seed itself is state 0).
pub fn iterate(seed: Vec2, p: MapParams, transient: usize, keep: usize) -> Result<Orbit> {
    if keep < 1 {
        return Err(Error::PreconditionViolation(
            "iterate requires keep >= 1".into(),
        ));
    }
    if !seed.is_finite() {
        return Err(Error::PreconditionViolation("seed must be finite".into()));
    }
    let total = transient + keep;
    let mut states = Vec::with_capacity(total);
    let mut s = seed;
    states.push(s);
    for i in 1..total {
        s = step_unchecked(s, p);
        if escaped(s) {
            return Err(Error::DivergedState {
                index: i,
                bound: ESCAPE_BOUND,
            });
        }
        states.push(s);
    }
    Ok(Orbit {
        states,
        transient_len: transient,
        params: p,
        seed,
    })
}

/// Axis-aligned bounding box of the post-transient states, inflated on each
/// side by `margin_frac` of that axis's side length.
pub fn attractor_bbox(orbit: &Orbit, margin_frac: f64) -> Result<Box2> {
    if margin_frac < 0.0 || !margin_frac.is_finite() {
        return Err(Error::PreconditionViolation(format!(
            "margin_frac must be >= 0, got {margin_frac}"
        )));
    }
    let states = orbit.post_transient();
    if states.is_empty() {
        return Err(Error::EmptyOrbit);
    }
    let mut min = states[0];
    let mut max = states[0];
    for s in states {
        min.x = min.x.min(s.x);
        min.y = min.y.min(s.y);
        max.x = max.x.max(s.x);
        max.y = max.y.max(s.y);
    }
    let dx = margin_frac * (max.x - min.x);
    let dy = margin_frac * (max.y - min.y);
    Ok(Box2 {
        min: Vec2::new(min.x - dx, min.y - dy),
        max: Vec2::new(max.x + dx, max.y + dy),
    })
}

/// Estimates the largest Lyapunov exponent by propagating a tangent vector
/// through the map Jacobian with per-step renormalization (Benettin's
/// method). Positive values certify exponential separation of nearby orbits.
pub fn lyapunov_max(p: MapParams, seed: Vec2, iters: usize, transient: usize) -> Result<f64> {
    if iters < 1000 {
        return Err(Error::PreconditionViolation(format!(
            "lyapunov_max requires iters >= 1000, got {iters}"
        )));
    }
    let mut s = seed;
    for i in 1..=transient {
        s = step_unchecked(s, p);
        if escaped(s) {
            return Err(Error::DivergedState {
                index: i,
                bound: ESCAPE_BOUND,
            });
        }
    }
    let mut tx = 1.0_f64;
    let mut ty = 0.0_f64;
    let mut log_sum = 0.0_f64;
    for i in 1..=iters {
        let j = jacobian(s, p);
        let nx = j[0] * tx + j[1] * ty;
        let ny = j[2] * tx + j[3] * ty;
        let norm = nx.hypot(ny);
        if norm < f64::MIN_POSITIVE {
            return Err(Error::DegenerateTangent);
        }
        log_sum += norm.ln();
        tx = nx / norm;
        ty = ny / norm;

        s = step_unchecked(s, p);
        if escaped(s) {
            return Err(Error::DivergedState {
                index: transient + i,
                bound: ESCAPE_BOUND,
            });
        }
    }
    Ok(log_sum / iters as f64)
}

/// One grid point of a robustness scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub params: MapParams,
    /// Largest Lyapunov exponent; NaN when the point diverged.
    pub lle: f64,
    pub diverged: bool,
}

/// Lyapunov exponents evaluated over a parameter grid, in row-major
/// (a-outer, b-inner) order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
    pub grid: (usize, usize),
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Evaluates [`lyapunov_max`] on the Cartesian grid `a_range x b_range`.
///
/// Per-point divergence is recorded, not fatal. Grid points run in parallel;
/// the report is assembled in grid order so output is deterministic.
pub fn scan_robustness(
    kind: MapKind,
    a_range: (f64, f64),
    b_range: (f64, f64),
    grid: (usize, usize),
    iters: usize,
) -> Result<ScanReport> {
    let (na, nb) = grid;
    if na == 0 || nb == 0 || na * nb < 2 {
        return Err(Error::PreconditionViolation(format!(
            "scan grid must have at least 2 points, got {na}x{nb}"
        )));
    }
    // Validate the window corners up front so bad ranges fail loudly instead
    // of producing a report of invalid points.
    MapParams::new(kind, a_range.0, b_range.0)?;
    MapParams::new(kind, a_range.1, b_range.1)?;

    let a_values = linspace(a_range.0, a_range.1, na);
    let b_values = linspace(b_range.0, b_range.1, nb);
    let points: Vec<MapParams> = a_values
        .iter()
        .flat_map(|&a| b_values.iter().map(move |&b| MapParams { kind, a, b }))
        .collect();

    let entries: Vec<ScanEntry> = points
        .par_iter()
        .map(|&params| {
            match lyapunov_max(params, DEFAULT_SEED, iters, DEFAULT_TRANSIENT) {
                Ok(lle) => ScanEntry {
                    params,
                    lle,
                    diverged: false,
                },
                Err(_) => ScanEntry {
                    params,
                    lle: f64::NAN,
                    diverged: true,
                },
            }
        })
        .collect();

    Ok(ScanReport {
        entries,
        grid: (na, nb),
    })
}
