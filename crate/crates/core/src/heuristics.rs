//! Landmark lower bounds usable as A* heuristics.
//!
//! For ALP the quadrilateral is the walk `v → l_v → l_t → t` with sides
//! `a = d(v, l_v)`, `b = d(l_v, l_t)` and `c = d(t, l_t)`; the diagonals
//! `d(v, l_t)` and `d(l_v, t)` are unknown.

use crate::embedding::{AlpIndex, AltIndex};
use crate::graph::VertexId;

/// Anything that estimates the remaining distance from `v` to `t`.
pub trait Heuristic {
    fn estimate(&self, v: VertexId, t: VertexId) -> f64;
}

impl<F: Fn(VertexId, VertexId) -> f64> Heuristic for F {
    fn estimate(&self, v: VertexId, t: VertexId) -> f64 {
        self(v, t)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroHeuristic;

impl Heuristic for ZeroHeuristic {
    fn estimate(&self, _: VertexId, _: VertexId) -> f64 {
        0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeuristicConfig {
    pub use_ptolemy: bool,
    /// Clamp the final estimate at zero. Only diagnostics turn this off.
    pub clamp_nonnegative: bool,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            use_ptolemy: true,
            clamp_nonnegative: true,
        }
    }
}

impl HeuristicConfig {
    pub fn with_ptolemy(use_ptolemy: bool) -> Self {
        HeuristicConfig {
            use_ptolemy,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadSides {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// `max_l |d(l, v) − d(l, t)|` over the table; infinite entries are skipped.
#[inline]
pub fn alt_h(index: &AltIndex, v: VertexId, t: VertexId) -> f64 {
    if v == t {
        return 0.0;
    }
    let mut best = 0.0f64;
    for (&dv, &dt) in index.vertex_row(v).iter().zip(index.vertex_row(t)) {
        let bound = (dv - dt).abs();
        // inf - inf is NaN and inf - x is inf; neither carries information
        if bound.is_finite() && bound > best {
            best = bound;
        }
    }
    best
}

/// The six quadrilateral bounds on `d(v, t)`, unclamped.
///
/// * `L1 = b − a − c`: `b ≤ a + d(v,t) + c` along `l_v → v → t → l_t`.
/// * `L2 = a − b − c`: `a ≤ d(v,t) + c + b` along `v → t → l_t → l_v`.
/// * `L3 = c − a − b`: symmetric to `L2` from the target side.
/// * `L4 = |a − b| − c`: `d(v,l_t) ≥ |a − b|` and `d(v,t) ≥ d(v,l_t) − c`.
/// * `L5 = |b − c| − a`: `d(l_v,t) ≥ |b − c|` and `d(v,t) ≥ d(l_v,t) − a`.
/// * `L6`: Ptolemy, `d(v,l_t)·d(l_v,t) ≤ a·c + b·d(v,t)`, solved for
///   `d(v,t)` with each diagonal replaced by its nonnegative triangle lower
///   bound. Undefined (`−∞`) when `b = 0` or when disabled.
pub fn alp_bounds(q: QuadSides, cfg: HeuristicConfig) -> [f64; 6] {
    let QuadSides { a, b, c } = q;
    let ptolemy = if cfg.use_ptolemy && b > 0.0 {
        ((b - a).max(0.0) * (b - c).max(0.0) - a * c) / b
    } else {
        f64::NEG_INFINITY
    };
    [
        b - a - c,
        a - b - c,
        c - a - b,
        (a - b).abs() - c,
        (b - c).abs() - a,
        ptolemy,
    ]
}

/// Quadrilateral sides for `(v, t)`, or `None` when the labels put both in
/// the same partition or any side is infinite.
pub fn quad_sides(index: &AlpIndex, v: VertexId, t: VertexId) -> Option<QuadSides> {
    let (lv, lt) = (index.label(v), index.label(t));
    if lv.landmark == lt.landmark {
        return None;
    }
    let q = QuadSides {
        a: lv.dist,
        b: index.landmark_distance(lv.landmark, lt.landmark),
        c: lt.dist,
    };
    (q.a.is_finite() && q.b.is_finite() && q.c.is_finite()).then_some(q)
}

/// Dual-landmark estimate: the best quadrilateral bound, or the single
/// landmark triangle bound `|a − c|` when `v` and `t` share a landmark.
#[inline]
pub fn alp_h(index: &AlpIndex, v: VertexId, t: VertexId, cfg: HeuristicConfig) -> f64 {
    if v == t {
        return 0.0;
    }
    let (lv, lt) = (index.label(v), index.label(t));
    if !lv.dist.is_finite() || !lt.dist.is_finite() {
        return 0.0;
    }
    if lv.landmark == lt.landmark {
        return (lv.dist - lt.dist).abs();
    }
    let b = index.landmark_distance(lv.landmark, lt.landmark);
    if !b.is_finite() {
        return 0.0;
    }
    let best = alp_bounds(
        QuadSides {
            a: lv.dist,
            b,
            c: lt.dist,
        },
        cfg,
    )
    .into_iter()
    .fold(f64::NEG_INFINITY, f64::max);
    if cfg.clamp_nonnegative {
        best.max(0.0)
    } else {
        best
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AltHeuristic<'a>(pub &'a AltIndex);

impl Heuristic for AltHeuristic<'_> {
    #[inline]
    fn estimate(&self, v: VertexId, t: VertexId) -> f64 {
        alt_h(self.0, v, t)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AlpHeuristic<'a> {
    pub index: &'a AlpIndex,
    pub cfg: HeuristicConfig,
}

impl Heuristic for AlpHeuristic<'_> {
    #[inline]
    fn estimate(&self, v: VertexId, t: VertexId) -> f64 {
        alp_h(self.index, v, t, self.cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{build_alp_index, build_alt_index, EmbeddingMode};
    use crate::graph::tests::path;
    use crate::partition::Partition;
    use proptest::prelude::*;

    const ON: HeuristicConfig = HeuristicConfig {
        use_ptolemy: true,
        clamp_nonnegative: true,
    };

    #[test]
    fn alt_on_path() {
        let g = path(3);
        let one = build_alt_index(&g, &[0]).unwrap();
        assert_eq!(alt_h(&one, 1, 2), 1.0);
        assert_eq!(alt_h(&one, 2, 2), 0.0);
        let two = build_alt_index(&g, &[0, 2]).unwrap();
        assert_eq!(alt_h(&two, 0, 2), 2.0);
    }

    #[test]
    fn bounds_on_five_path() {
        let b = alp_bounds(
            QuadSides {
                a: 1.0,
                b: 4.0,
                c: 1.0,
            },
            ON,
        );
        assert_eq!(b[0], 2.0);
        assert_eq!(b[5], 2.0);
    }

    #[test]
    fn bounds_on_degenerate_quad() {
        let b = alp_bounds(
            QuadSides {
                a: 0.0,
                b: 0.0,
                c: 0.0,
            },
            ON,
        );
        assert_eq!(&b[..5], &[0.0; 5]);
        assert_eq!(b[5], f64::NEG_INFINITY);
    }

    #[test]
    fn bounds_on_four_cycle() {
        let b = alp_bounds(
            QuadSides {
                a: 1.0,
                b: 2.0,
                c: 1.0,
            },
            ON,
        );
        assert_eq!(b[0], 0.0);
        assert_eq!(b[1], -2.0);
        assert_eq!(b[2], -2.0);
        assert_eq!(b[5], 0.0);
    }

    #[test]
    fn alp_on_five_path() {
        let g = path(5);
        let p = Partition::from_assignment(vec![0, 0, 0, 1, 1]).unwrap();
        let idx = build_alp_index(&g, &p, &[0, 4], EmbeddingMode::Exact).unwrap();
        assert_eq!(alp_h(&idx, 1, 3, ON), 2.0);
        assert_eq!(alp_h(&idx, 3, 3, ON), 0.0);
    }

    #[test]
    fn alp_on_split_four_path_is_zero() {
        let g = path(4);
        let p = Partition::from_assignment(vec![0, 0, 1, 1]).unwrap();
        let idx = build_alp_index(&g, &p, &[1, 2], EmbeddingMode::Exact).unwrap();
        assert_eq!(
            quad_sides(&idx, 0, 3),
            Some(QuadSides {
                a: 1.0,
                b: 1.0,
                c: 1.0
            })
        );
        assert_eq!(alp_h(&idx, 0, 3, ON), 0.0);
        let raw = HeuristicConfig {
            clamp_nonnegative: false,
            ..ON
        };
        assert_eq!(alp_h(&idx, 0, 3, raw), -1.0);
    }

    #[test]
    fn same_partition_uses_triangle_bound() {
        let g = path(5);
        let idx = build_alp_index(&g, &Partition::whole(5), &[0], EmbeddingMode::Exact).unwrap();
        assert_eq!(alp_h(&idx, 1, 4, ON), 3.0);
    }

    #[test]
    fn infinite_label_gives_no_information() {
        let g = path(3);
        let p = Partition::from_assignment(vec![0, 1, 0]).unwrap();
        let idx = build_alp_index(&g, &p, &[0, 1], EmbeddingMode::Induced).unwrap();
        assert_eq!(alp_h(&idx, 2, 1, ON), 0.0);
        assert_eq!(alp_h(&idx, 0, 2, ON), 0.0);
    }

    fn side() -> impl Strategy<Value = f64> {
        prop_oneof![0.0..100.0f64, (0u32..20).prop_map(f64::from)]
    }

    proptest! {
        #[test]
        fn composition_identities(a in side(), b in side(), c in side()) {
            let l = alp_bounds(QuadSides { a, b, c }, ON);
            let tol = 1e-12 * (1.0 + a + b + c);
            prop_assert!((l[3] - l[0].max(l[1])).abs() <= tol);
            prop_assert!((l[4] - l[0].max(l[2])).abs() <= tol);
        }

        #[test]
        fn disabling_ptolemy_never_raises(a in side(), b in side(), c in side()) {
            let on = alp_bounds(QuadSides { a, b, c }, ON);
            let off = alp_bounds(QuadSides { a, b, c }, HeuristicConfig::with_ptolemy(false));
            let max = |x: [f64; 6]| x.into_iter().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(max(off) <= max(on));
            prop_assert_eq!(&on[..5], &off[..5]);
        }

        #[test]
        fn ptolemy_never_exceeds_clamped_first_bound(a in side(), b in side(), c in side()) {
            let l = alp_bounds(QuadSides { a, b, c }, ON);
            prop_assert!(l[5] <= l[0].max(0.0) + 1e-9 * (1.0 + b));
        }
    }
}
