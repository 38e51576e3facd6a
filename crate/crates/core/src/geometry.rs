//! Word generation from grid geometry: codings of lattice segments,
//! mechanical prefixes, slalom words around interior lattice points, and
//! cutting sequences of increasing curves on a square grid.
//!
//! Letter convention throughout: 0 is a crossing of a vertical grid line
//! (moving right), 1 is a crossing of a horizontal grid line (moving up).
//! Segment codings use the open segment, so endpoints never contribute.

use serde::Serialize;
use thiserror::Error;

use crate::derivation::{is_analytic_tangent, is_tangent};
use crate::word::Word;

/// Largest interior-point count for which `slalom_bispecials` will
/// materialize all 2^k choice words.
pub const MAX_SLALOM_POINTS: usize = 24;

const MAX_PLACEMENT_ATTEMPTS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("segment ({p}, {q}) is not primitive")]
    NotPrimitive { p: u64, q: u64 },
    #[error("segment ({p}, {q}) has no interior lattice point")]
    NoInteriorPoint { p: u64, q: u64 },
    #[error("segment has {points} interior points, more than the supported {limit}")]
    SlalomTooLarge { points: usize, limit: usize },
    #[error("mask {mask} does not fit {points} choice slots")]
    InvalidMask { mask: u64, points: usize },
    #[error("curve is not strictly increasing on its domain")]
    NonMonotone,
    #[error("two grid events separated by only {separation:e} near x = {x}")]
    CornerHit { x: f64, separation: f64 },
    #[error("no generic placement found for mesh {mesh} in offset slot {slot}")]
    TooManyCornerHits { mesh: f64, slot: usize },
    #[error("mesh {mesh} is not positive")]
    InvalidMesh { mesh: f64 },
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The segment from (0,0) to (p,q), p, q >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSegment {
    p: u64,
    q: u64,
}

impl LatticeSegment {
    /// Panics if either coordinate is zero.
    pub fn new(p: u64, q: u64) -> Self {
        assert!(p >= 1 && q >= 1, "segment endpoint must have positive coordinates");
        LatticeSegment { p, q }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn gcd(&self) -> u64 {
        gcd(self.p, self.q)
    }

    /// Number of lattice points strictly inside the segment.
    pub fn interior_points(&self) -> usize {
        (self.gcd() - 1) as usize
    }

    /// The word reading off, by increasing abscissa along the open
    /// segment, crossings of the interior vertical lines (0) and
    /// horizontal lines (1). Defined only for primitive segments, where
    /// no two crossings can coincide; length p + q - 2.
    pub fn coding(&self) -> Result<Word, GeometryError> {
        if self.gcd() != 1 {
            return Err(GeometryError::NotPrimitive { p: self.p, q: self.q });
        }
        let (p, q) = (self.p, self.q);
        // The vertical line x = a is met at parameter a*q, the horizontal
        // y = b at b*p, on a common scale of p*q per unit square.
        let mut letters = Vec::with_capacity((p + q - 2) as usize);
        let (mut a, mut b) = (1, 1);
        while a < p || b < q {
            let vertical =
                b >= q || (a < p && (a as u128) * (q as u128) < (b as u128) * (p as u128));
            if vertical {
                letters.push(0);
                a += 1;
            } else {
                letters.push(1);
                b += 1;
            }
        }
        Ok(Word::from_letters(letters))
    }

    /// The slalom word for one pattern of over/under choices at the
    /// interior points: bit i of `mask` (bit 0 is the first point along
    /// the segment) picks "10" when set (passing over the point, so the
    /// horizontal line is crossed first) and "01" when clear (passing
    /// under). The choices are interleaved with the coding of the
    /// primitive cell; total length p + q - 2.
    pub fn slalom_word(&self, mask: u64) -> Result<Word, GeometryError> {
        let k = self.interior_points();
        if k == 0 {
            return Err(GeometryError::NoInteriorPoint { p: self.p, q: self.q });
        }
        if k > 63 {
            return Err(GeometryError::SlalomTooLarge { points: k, limit: 63 });
        }
        if mask >> k != 0 {
            return Err(GeometryError::InvalidMask { mask, points: k });
        }
        Ok(self.build_slalom(|i| (mask >> i) & 1 == 1))
    }

    fn build_slalom(&self, over: impl Fn(usize) -> bool) -> Word {
        let g = self.gcd();
        let cell = LatticeSegment::new(self.p / g, self.q / g)
            .coding()
            .expect("cell segment is primitive");
        let mut letters = Vec::with_capacity((self.p + self.q - 2) as usize);
        letters.extend_from_slice(cell.letters());
        for i in 0..self.interior_points() {
            letters.extend_from_slice(if over(i) { &[1, 0] } else { &[0, 1] });
            letters.extend_from_slice(cell.letters());
        }
        Word::from_letters(letters)
    }

    /// All 2^k slalom words, ordered by choice mask.
    pub fn slalom_bispecials(&self) -> Result<Vec<Word>, GeometryError> {
        let k = self.interior_points();
        if k == 0 {
            return Err(GeometryError::NoInteriorPoint { p: self.p, q: self.q });
        }
        if k > MAX_SLALOM_POINTS {
            return Err(GeometryError::SlalomTooLarge { points: k, limit: MAX_SLALOM_POINTS });
        }
        Ok((0..1u64 << k).map(|mask| self.build_slalom(|i| (mask >> i) & 1 == 1)).collect())
    }

    /// The two constant-choice slalom words: bending above every interior
    /// point (all "10") and under every point (all "01"), in that order.
    pub fn analytic_slalom_pair(&self) -> Result<(Word, Word), GeometryError> {
        if self.interior_points() == 0 {
            return Err(GeometryError::NoInteriorPoint { p: self.p, q: self.q });
        }
        Ok((self.build_slalom(|_| true), self.build_slalom(|_| false)))
    }
}

/// Prefix of the mechanical word with slope `alpha` and intercept `rho`:
/// letter k is floor((k+1) alpha + rho) - floor(k alpha + rho).
/// Panics unless alpha lies strictly between 0 and 1.
pub fn mechanical_prefix(alpha: f64, rho: f64, n: usize) -> Word {
    assert!(alpha > 0.0 && alpha < 1.0, "slope must lie strictly between 0 and 1");
    Word::from_letters((0..n).map(|k| {
        let k = k as f64;
        (((k + 1.0) * alpha + rho).floor() - (k * alpha + rho).floor()) as u8
    }))
}

/// Strictly increasing curve families on an x-domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    Line { slope: f64, intercept: f64 },
    Parabola { a: f64, b: f64, c: f64 },
    Exp { base: f64, scale: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSpec {
    #[serde(flatten)]
    pub kind: CurveKind,
    pub domain: (f64, f64),
}

impl CurveSpec {
    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            CurveKind::Line { slope, intercept } => slope * x + intercept,
            CurveKind::Parabola { a, b, c } => (a * x + b) * x + c,
            CurveKind::Exp { base, scale } => scale * base.powf(x),
        }
    }

    /// Checks that the curve is strictly increasing on its domain.
    pub fn validate(&self) -> Result<(), GeometryError> {
        let (x0, x1) = self.domain;
        if !(x0.is_finite() && x1.is_finite() && x0 < x1) {
            return Err(GeometryError::NonMonotone);
        }
        let ok = match self.kind {
            CurveKind::Line { slope, .. } => slope > 0.0,
            // An upward parabola increases where the derivative at the
            // left end is already positive.
            CurveKind::Parabola { a, b, .. } => a > 0.0 && 2.0 * a * x0 + b > 0.0,
            CurveKind::Exp { base, scale } => base > 1.0 && scale > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(GeometryError::NonMonotone)
        }
    }

    /// A copy with every real rounded to report precision.
    pub fn rounded(&self) -> CurveSpec {
        let kind = match self.kind {
            CurveKind::Line { slope, intercept } => {
                CurveKind::Line { slope: round_sig(slope), intercept: round_sig(intercept) }
            }
            CurveKind::Parabola { a, b, c } => {
                CurveKind::Parabola { a: round_sig(a), b: round_sig(b), c: round_sig(c) }
            }
            CurveKind::Exp { base, scale } => {
                CurveKind::Exp { base: round_sig(base), scale: round_sig(scale) }
            }
        };
        CurveSpec { kind, domain: (round_sig(self.domain.0), round_sig(self.domain.1)) }
    }
}

/// A square grid of the given mesh, with lines x = ox + i*h and
/// y = oy + j*h.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPlacement {
    pub mesh: f64,
    pub offset: (f64, f64),
}

/// Numerical tolerances for cutting sequences: `bisection` is the
/// absolute x-resolution of horizontal-crossing root finding, `corner`
/// the minimal separation below which two events count as a corner hit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub bisection: f64,
    pub corner: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { bisection: 1e-12, corner: 1e-9 }
    }
}

fn bisect(curve: &CurveSpec, level: f64, tol: f64) -> f64 {
    let (mut lo, mut hi) = curve.domain;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if curve.eval(mid) < level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The cutting sequence of the curve through the grid, with default
/// tolerances. Vertical-line crossings are read off directly, horizontal
/// ones by bisection; events are merged by abscissa. Domain endpoints are
/// not events.
pub fn cutting_sequence(curve: &CurveSpec, grid: &GridPlacement) -> Result<Word, GeometryError> {
    cutting_sequence_with(curve, grid, Tolerances::default())
}

pub fn cutting_sequence_with(
    curve: &CurveSpec,
    grid: &GridPlacement,
    tol: Tolerances,
) -> Result<Word, GeometryError> {
    curve.validate()?;
    if !(grid.mesh > 0.0) {
        return Err(GeometryError::InvalidMesh { mesh: grid.mesh });
    }
    let h = grid.mesh;
    let (ox, oy) = grid.offset;
    let (x0, x1) = curve.domain;
    let (y0, y1) = (curve.eval(x0), curve.eval(x1));
    let mut events: Vec<(f64, u8)> = Vec::new();
    let lo = ((x0 - ox) / h).floor() as i64 - 2;
    let hi = ((x1 - ox) / h).ceil() as i64 + 2;
    for i in lo..=hi {
        let x = ox + i as f64 * h;
        if x > x0 && x < x1 {
            events.push((x, 0));
        }
    }
    let lo = ((y0 - oy) / h).floor() as i64 - 2;
    let hi = ((y1 - oy) / h).ceil() as i64 + 2;
    for j in lo..=hi {
        let level = oy + j as f64 * h;
        if level > y0 && level < y1 {
            events.push((bisect(curve, level, tol.bisection), 1));
        }
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    for pair in events.windows(2) {
        let separation = pair[1].0 - pair[0].0;
        if separation < tol.corner {
            return Err(GeometryError::CornerHit { x: pair[0].0, separation });
        }
    }
    Ok(Word::from_letters(events.into_iter().map(|(_, letter)| letter)))
}

/// One factor of a scan word with its membership verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorVerdict {
    pub w: Word,
    pub tangent: bool,
    pub analytic: bool,
}

/// One (mesh, offset) placement of a scan: the cutting sequence and its
/// factors up to the length bound, shortest first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanEntry {
    pub mesh: f64,
    pub offset: (f64, f64),
    pub word: Word,
    pub factors: Vec<FactorVerdict>,
}

/// An empirical approximation of the factor language a curve generates:
/// the factors seen across finitely many grids. No claim is made about
/// the full vanishing-mesh limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorReport {
    pub curve: CurveSpec,
    pub entries: Vec<ScanEntry>,
}

impl FactorReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Rounds to the twelve significant digits used in reports.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses back")
}

/// Deterministic offset for a scan slot: a low-discrepancy walk with
/// quadratic-irrational strides, perturbed per retry attempt.
fn scan_offset(mesh: f64, slot: usize, attempt: usize) -> (f64, f64) {
    let t = (slot + 1) as f64;
    let a = attempt as f64;
    let fx = (0.5 + t * (2f64.sqrt() - 1.0) + a * (5f64.sqrt() - 2.0)).fract();
    let fy = (0.5 + t * (3f64.sqrt() - 1.0) + a * (7f64.sqrt() - 2.0)).fract();
    (fx * mesh, fy * mesh)
}

/// Scans the curve across several meshes with deterministically sampled
/// offsets, retrying each placement (up to 100 perturbations) when it
/// hits a grid corner. Entries are ordered by mesh then offset slot.
pub fn multigrid_factor_scan(
    curve: &CurveSpec,
    meshes: &[f64],
    offsets_per_mesh: usize,
    max_factor_len: usize,
) -> Result<FactorReport, GeometryError> {
    curve.validate()?;
    let mut entries = Vec::new();
    for &mesh in meshes {
        if !(mesh > 0.0) {
            return Err(GeometryError::InvalidMesh { mesh });
        }
        for slot in 0..offsets_per_mesh {
            let mut placed = false;
            for attempt in 0..MAX_PLACEMENT_ATTEMPTS {
                let offset = scan_offset(mesh, slot, attempt);
                let grid = GridPlacement { mesh, offset };
                match cutting_sequence(curve, &grid) {
                    Ok(word) => {
                        entries.push(scan_entry(mesh, offset, word, max_factor_len));
                        placed = true;
                        break;
                    }
                    Err(GeometryError::CornerHit { .. }) => continue,
                    Err(other) => return Err(other),
                }
            }
            if !placed {
                return Err(GeometryError::TooManyCornerHits { mesh, slot });
            }
        }
    }
    Ok(FactorReport { curve: curve.rounded(), entries })
}

fn scan_entry(mesh: f64, offset: (f64, f64), word: Word, max_factor_len: usize) -> ScanEntry {
    let mut factors = Vec::new();
    for len in 1..=max_factor_len.min(word.len()) {
        for f in word.factors(len).expect("factor length is bounded by the word") {
            factors.push(FactorVerdict {
                tangent: is_tangent(&f),
                analytic: is_analytic_tangent(&f),
                w: f,
            });
        }
    }
    ScanEntry {
        mesh: round_sig(mesh),
        offset: (round_sig(offset.0), round_sig(offset.1)),
        word,
        factors,
    }
}
