//! Oriented knot diagrams stored as annotated planar 4-valent graphs.
//!
//! Edge ids in a diagram are *segments*: pieces of the curve running from
//! one crossing to the next. Colorings live on *arcs*, the classes of
//! segments glued together where they pass over a crossing.
//!
//! The normal to an oriented strand is its tangent rotated a quarter turn
//! counterclockwise. A crossing is positive when the under strand runs along
//! the over strand's normal, so `under_src` is then the incoming under
//! segment; at a negative crossing it is the outgoing one. In either case the
//! counterclockwise order of the four ends is
//! `under_src, over_out, under_dst, over_in`.

mod state;

use std::fmt::Write as _;

use thiserror::Error;

use crate::io::content_lines;

pub use state::{
    alexander_coloring_count, cocycle_invariant_2, cocycle_invariant_3, colorings, invariance_check, shadow_colorings,
    Coloring, InvariantValue, KnotError, ShadowColoring,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub sign: i8,
    pub over_in: usize,
    pub over_out: usize,
    pub under_src: usize,
    pub under_dst: usize,
}

impl Crossing {
    /// Segment ends in counterclockwise order.
    pub fn ccw(&self) -> [usize; 4] {
        [self.under_src, self.over_out, self.under_dst, self.over_in]
    }

    fn under_in(&self) -> usize {
        if self.sign > 0 { self.under_src } else { self.under_dst }
    }

    fn under_out(&self) -> usize {
        if self.sign > 0 { self.under_dst } else { self.under_src }
    }

    /// Whether the end at ccw position `k` leaves the crossing.
    fn is_out(&self, k: usize) -> bool {
        match k {
            0 => self.sign < 0,
            1 => true,
            2 => self.sign > 0,
            _ => false,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: segment {segment} {message}")]
    Dangling { line: usize, segment: usize, message: String },
    #[error("line {line}: face tracing found {faces} faces, expected {expected}")]
    Euler { line: usize, faces: usize, expected: usize },
    #[error("bad braid word: {0}")]
    Braid(String),
}

fn malformed(line: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Malformed { line, message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotDiagram {
    segments: usize,
    crossings: Vec<Crossing>,
    arc_of: Vec<usize>,
    arcs: usize,
    components: usize,
    faces: usize,
    /// face to the left of the dart leaving crossing `c` along end `k`
    dart_face: Vec<[usize; 4]>,
    source_face: Vec<usize>,
    seg_left: Vec<usize>,
    seg_right: Vec<usize>,
}

struct Find(Vec<usize>);

impl Find {
    fn new(n: usize) -> Self {
        Find((0..n).collect())
    }

    fn root(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.root(a), self.root(b));
        self.0[ra.max(rb)] = ra.min(rb);
    }

    /// Dense class numbers, ordered by smallest member.
    fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.0.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for a in 0..n {
            let r = self.root(a);
            if id[r] == usize::MAX {
                id[r] = count;
                count += 1;
            }
            out[a] = id[r];
        }
        (out, count)
    }
}

impl KnotDiagram {
    /// The zero-crossing unknot.
    pub fn unknot() -> Self {
        KnotDiagram {
            segments: 1,
            crossings: Vec::new(),
            arc_of: vec![0],
            arcs: 1,
            components: 1,
            faces: 2,
            dart_face: Vec::new(),
            source_face: Vec::new(),
            seg_left: vec![0],
            seg_right: vec![1],
        }
    }

    /// Validates the records and traces faces. `lines[0]` is the header
    /// line and `lines[c + 1]` the line of crossing `c`, for messages.
    fn build(segments: usize, crossings: Vec<Crossing>, lines: &[usize]) -> Result<Self, DiagramError> {
        let header = lines[0];
        if crossings.is_empty() {
            if segments != 1 {
                return Err(malformed(header, "a diagram without crossings must have exactly one segment"));
            }
            return Ok(Self::unknot());
        }
        let mut out_end: Vec<Option<(usize, usize)>> = vec![None; segments];
        let mut in_end: Vec<Option<(usize, usize)>> = vec![None; segments];
        for (c, x) in crossings.iter().enumerate() {
            let line = lines[c + 1];
            if x.sign != 1 && x.sign != -1 {
                return Err(malformed(line, "sign must be +1 or -1"));
            }
            for (k, s) in x.ccw().into_iter().enumerate() {
                if s >= segments {
                    return Err(malformed(line, format!("segment {s} out of range 0..{segments}")));
                }
                let (slot, what) = if x.is_out(k) { (&mut out_end[s], "out") } else { (&mut in_end[s], "in") };
                if slot.replace((c, k)).is_some() {
                    return Err(DiagramError::Dangling { line, segment: s, message: format!("used twice as {what}") });
                }
            }
        }
        let mut ends = Vec::with_capacity(segments);
        for s in 0..segments {
            match (out_end[s], in_end[s]) {
                (Some(o), Some(i)) => ends.push((o, i)),
                (o, i) => {
                    let (line, message) = match (o, i) {
                        (Some((c, _)), None) => (lines[c + 1], "never enters a crossing"),
                        (None, Some((c, _))) => (lines[c + 1], "never leaves a crossing"),
                        _ => (header, "is not used"),
                    };
                    return Err(DiagramError::Dangling { line, segment: s, message: message.into() });
                }
            }
        }

        let mut arcs = Find::new(segments);
        let mut graph = Find::new(crossings.len());
        for x in &crossings {
            arcs.union(x.over_in, x.over_out);
        }
        for &((c, _), (d, _)) in &ends {
            graph.union(c, d);
        }
        let (arc_of, arc_count) = arcs.classes();
        let pieces = graph.classes().1;

        // each strand continues straight through a crossing
        let mut strands = Find::new(segments);
        for x in &crossings {
            strands.union(x.over_in, x.over_out);
            strands.union(x.under_in(), x.under_out());
        }
        let components = strands.classes().1;

        let n = crossings.len();
        let mut dart_face = vec![[usize::MAX; 4]; n];
        let mut faces = 0;
        for c0 in 0..n {
            for k0 in 0..4 {
                if dart_face[c0][k0] != usize::MAX {
                    continue;
                }
                let (mut c, mut k) = (c0, k0);
                while dart_face[c][k] == usize::MAX {
                    dart_face[c][k] = faces;
                    let s = crossings[c].ccw()[k];
                    let (o, i) = ends[s];
                    let (c2, k2) = if (c, k) == o { i } else { o };
                    (c, k) = (c2, (k2 + 3) % 4);
                }
                faces += 1;
            }
        }
        let expected = n + 1 + pieces;
        if faces != expected {
            return Err(DiagramError::Euler { line: header, faces, expected });
        }
        let source_face = crossings
            .iter()
            .enumerate()
            .map(|(c, x)| if x.sign > 0 { dart_face[c][0] } else { dart_face[c][3] })
            .collect();
        let seg_left = ends.iter().map(|&((c, k), _)| dart_face[c][k]).collect();
        let seg_right = ends.iter().map(|&(_, (c, k))| dart_face[c][k]).collect();
        Ok(KnotDiagram {
            segments,
            crossings,
            arc_of,
            arcs: arc_count,
            components,
            faces,
            dart_face,
            source_face,
            seg_left,
            seg_right,
        })
    }

    pub fn segment_count(&self) -> usize {
        self.segments
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arc_of_segment(&self, s: usize) -> usize {
        self.arc_of[s]
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    /// The face from which both normals at crossing `c` point away.
    pub fn source_face(&self, c: usize) -> usize {
        self.source_face[c]
    }

    pub fn dart_face(&self, c: usize, k: usize) -> usize {
        self.dart_face[c][k]
    }

    /// Faces on the left and right of segment `s`, seen along its
    /// orientation. The normal points into the left one.
    pub fn sides(&self, s: usize) -> (usize, usize) {
        (self.seg_left[s], self.seg_right[s])
    }

    /// Crossing changes everywhere. The planar picture is kept, so every
    /// sign flips and the old under strand becomes the over strand.
    pub fn mirror(&self) -> KnotDiagram {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let sign = -x.sign;
                let (src, dst) = if sign > 0 { (x.over_in, x.over_out) } else { (x.over_out, x.over_in) };
                Crossing { sign, over_in: x.under_in(), over_out: x.under_out(), under_src: src, under_dst: dst }
            })
            .collect();
        let lines: Vec<usize> = (0..=self.crossings.len()).collect();
        Self::build(self.segments, crossings, &lines).expect("a mirror image is a valid diagram")
    }

    /// Closure of a braid on `strands` strands. Generator `i` (1-based) is a
    /// positive crossing of positions `i` and `i + 1`; `-i` is its inverse.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Result<KnotDiagram, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::Braid("need at least one strand".into()));
        }
        if word.is_empty() && strands == 1 {
            return Ok(Self::unknot());
        }
        let mut cur: Vec<usize> = (0..strands).collect();
        let mut next = strands;
        let mut crossings = Vec::with_capacity(word.len());
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(DiagramError::Braid(format!("generator {g} out of range for {strands} strands")));
            }
            let (a, b) = (i - 1, i);
            let (nw, ne, se, sw) = (cur[a], cur[b], next, next + 1);
            next += 2;
            crossings.push(if g > 0 {
                Crossing { sign: 1, over_in: ne, over_out: sw, under_src: nw, under_dst: se }
            } else {
                Crossing { sign: -1, over_in: nw, over_out: se, under_src: sw, under_dst: ne }
            });
            cur[a] = sw;
            cur[b] = se;
        }
        // glue the bottom of each position to its top
        let mut rename: Vec<usize> = (0..next).collect();
        for (p, &s) in cur.iter().enumerate() {
            if s == p {
                return Err(DiagramError::Braid(format!("strand {} has no crossings", p + 1)));
            }
            rename[s] = p;
        }
        let mut dense = vec![usize::MAX; next];
        let mut count = 0;
        for s in 0..next {
            if rename[s] == s {
                dense[s] = count;
                count += 1;
            }
        }
        let id = |s: usize| dense[rename[s]];
        for x in &mut crossings {
            *x = Crossing {
                sign: x.sign,
                over_in: id(x.over_in),
                over_out: id(x.over_out),
                under_src: id(x.under_src),
                under_dst: id(x.under_dst),
            };
        }
        let lines: Vec<usize> = (0..=crossings.len()).collect();
        Self::build(count, crossings, &lines)
    }
}

/// Reads the `.pdq` format: `diagram <segments> <crossings>`, then one line
/// `X <sign> <over_in> <over_out> <under_src> <under_dst> <c0> <c1> <c2> <c3>`
/// per crossing, where `c0..c3` repeats the ends in counterclockwise order
/// from `under_src`. A crossingless diagram may carry a `trivial` line.
pub fn parse_diagram(text: &str) -> Result<KnotDiagram, DiagramError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| malformed(0, "missing `diagram` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let nums = |line: usize, f: &[&str]| -> Result<Vec<i64>, DiagramError> {
        f.iter().map(|v| v.parse::<i64>().map_err(|_| malformed(line, format!("bad number {v:?}")))).collect()
    };
    if fields.len() != 3 || fields[0] != "diagram" {
        return Err(malformed(hline, "expected `diagram <segments> <crossings>`"));
    }
    let h = nums(hline, &fields[1..])?;
    if h.iter().any(|&v| v < 0) {
        return Err(malformed(hline, "counts must be non-negative"));
    }
    let (segments, n) = (h[0] as usize, h[1] as usize);
    let mut crossings = Vec::with_capacity(n);
    let mut line_of = vec![hline];
    let mut trivial = false;
    for (line, text) in lines {
        let f: Vec<&str> = text.split_whitespace().collect();
        if f == ["trivial"] && n == 0 && !trivial {
            trivial = true;
            continue;
        }
        if f[0] != "X" || f.len() != 10 {
            return Err(malformed(line, "expected `X` followed by 9 numbers"));
        }
        if crossings.len() == n {
            return Err(malformed(line, format!("more than {n} crossings")));
        }
        let v = nums(line, &f[1..])?;
        if v[1..].iter().any(|&s| s < 0) {
            return Err(malformed(line, "segment ids must be non-negative"));
        }
        if v[0] != 1 && v[0] != -1 {
            return Err(malformed(line, "sign must be +1 or -1"));
        }
        let s: Vec<usize> = v[1..].iter().map(|&s| s as usize).collect();
        let x = Crossing { sign: v[0] as i8, over_in: s[0], over_out: s[1], under_src: s[2], under_dst: s[3] };
        if x.ccw()[..] != s[4..] {
            return Err(malformed(line, "cyclic order must be under_src over_out under_dst over_in"));
        }
        crossings.push(x);
        line_of.push(line);
    }
    if crossings.len() != n {
        return Err(malformed(hline, format!("header promises {n} crossings, found {}", crossings.len())));
    }
    KnotDiagram::build(segments, crossings, &line_of)
}

pub fn write_diagram(d: &KnotDiagram) -> String {
    let mut out = format!("diagram {} {}\n", d.segments, d.crossings.len());
    if d.crossings.is_empty() {
        out.push_str("trivial\n");
    }
    for x in &d.crossings {
        let [c0, c1, c2, c3] = x.ccw();
        let sign = if x.sign > 0 { "+1" } else { "-1" };
        let _ = writeln!(
            out,
            "X {sign} {} {} {} {} {c0} {c1} {c2} {c3}",
            x.over_in, x.over_out, x.under_src, x.under_dst
        );
    }
    out
}

/// Diagrams used by the tests and the bundled corpus.
pub mod corpus {
    use super::KnotDiagram;

    pub fn trefoil() -> KnotDiagram {
        KnotDiagram::braid_closure(2, &[1, 1, 1]).unwrap()
    }

    pub fn figure_eight() -> KnotDiagram {
        KnotDiagram::braid_closure(3, &[1, -2, 1, -2]).unwrap()
    }

    /// The trefoil after a Markov stabilisation, i.e. one extra kink.
    pub fn trefoil_r1() -> KnotDiagram {
        KnotDiagram::braid_closure(3, &[1, 1, 1, 2]).unwrap()
    }

    /// The trefoil with a cancelling pair of crossings.
    pub fn trefoil_r2() -> KnotDiagram {
        KnotDiagram::braid_closure(2, &[1, 1, 1, 1, -1]).unwrap()
    }

    /// `(name, diagram)` for every bundled diagram.
    pub fn all() -> Vec<(&'static str, KnotDiagram)> {
        vec![
            ("unknot", KnotDiagram::unknot()),
            ("trefoil", trefoil()),
            ("mirror-trefoil", trefoil().mirror()),
            ("figure-eight", figure_eight()),
            ("trefoil-r1", trefoil_r1()),
            ("trefoil-r2", trefoil_r2()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::corpus::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trefoil_shape() {
        let t = trefoil();
        assert_eq!((t.crossing_count(), t.arc_count(), t.face_count()), (3, 3, 5));
        assert_eq!(t.segment_count(), 6);
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.writhe(), 3);
        let f = figure_eight();
        assert_eq!((f.crossing_count(), f.arc_count(), f.face_count(), f.writhe()), (4, 4, 6, 0));
        assert_eq!(trefoil_r1().face_count(), 6);
        assert_eq!(trefoil_r2().arc_count(), 5);
        // two-strand closure of the identity is a two-component unlink, which has no crossings
        assert!(KnotDiagram::braid_closure(2, &[]).is_err());
        assert_eq!(KnotDiagram::braid_closure(2, &[1, 1]).unwrap().component_count(), 2);
    }

    #[test]
    fn mirror_flips_signs() {
        let t = trefoil();
        let m = t.mirror();
        assert!(m.crossings().iter().all(|x| x.sign == -1));
        assert_eq!(m.mirror(), t);
        assert_eq!(KnotDiagram::unknot().mirror(), KnotDiagram::unknot());
        assert_eq!(m, KnotDiagram::braid_closure(2, &[-1, -1, -1]).unwrap().mirror().mirror());
    }

    #[test]
    fn source_face_is_right_of_both_strands() {
        for (_, d) in all() {
            for (c, x) in d.crossings().iter().enumerate() {
                let over = if x.sign > 0 { x.over_out } else { x.over_in };
                assert_eq!(d.source_face(c), d.sides(over).1);
                assert_eq!(d.source_face(c), d.sides(x.under_src).1);
            }
        }
    }

    #[test]
    fn pdq_round_trip_and_errors() {
        for (_, d) in all() {
            assert_eq!(parse_diagram(&write_diagram(&d)).unwrap(), d);
        }
        assert_eq!(parse_diagram("diagram 1 0\ntrivial\n").unwrap(), KnotDiagram::unknot());
        assert_eq!(parse_diagram("# nothing\ndiagram 1 0\n").unwrap(), KnotDiagram::unknot());

        let text = write_diagram(&trefoil());
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        // make segment 1 leave two crossings
        let x = trefoil().crossings()[1];
        let y = trefoil().crossings().iter().position(|c| c.over_out == 1 || (c.sign > 0 && c.under_dst == 1)).unwrap();
        assert_ne!(y, 1);
        lines[2] = {
            let mut z = x;
            z.over_out = 1;
            let [c0, c1, c2, c3] = z.ccw();
            format!("X +1 {} {} {} {} {c0} {c1} {c2} {c3}", z.over_in, z.over_out, z.under_src, z.under_dst)
        };
        let err = parse_diagram(&lines.join("\n")).unwrap_err();
        assert!(matches!(err, DiagramError::Dangling { .. }), "{err}");

        let err = parse_diagram("diagram 2 1\nX +1 0 1 0 1 0 1 0 0\n").unwrap_err();
        assert_eq!(err, malformed(2, "cyclic order must be under_src over_out under_dst over_in"));
        assert!(matches!(parse_diagram("diagram 2 1\nX +1 0 1\n"), Err(DiagramError::Malformed { line: 2, .. })));
        assert!(matches!(parse_diagram("diagram 3 1\n"), Err(DiagramError::Malformed { line: 1, .. })));
    }

    #[test]
    fn virtual_crossing_fails_euler() {
        // two closed strands meeting once: not a plane curve
        let err = parse_diagram("diagram 2 1\nX +1 0 0 1 1 1 0 1 0\n").unwrap_err();
        assert_eq!(err, DiagramError::Euler { line: 1, faces: 1, expected: 3 });
    }

    fn braid_word() -> impl Strategy<Value = (usize, Vec<i32>)> {
        (2usize..5).prop_flat_map(|s| {
            let gens = prop::collection::vec((1..s as i32, any::<bool>()), 1..9)
                .prop_map(|v| v.into_iter().map(|(g, p)| if p { g } else { -g }).collect::<Vec<i32>>());
            (Just(s), gens)
        })
    }

    proptest! {
        #[test]
        fn braid_closures_are_planar((s, word) in braid_word()) {
            if let Ok(d) = KnotDiagram::braid_closure(s, &word) {
                prop_assert_eq!(d.face_count(), d.crossing_count() + 2);
                prop_assert_eq!(d.mirror().mirror(), d.clone());
                prop_assert_eq!(parse_diagram(&write_diagram(&d)).unwrap(), d);
            }
        }
    }
}
