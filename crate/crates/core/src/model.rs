//! Points, instances, anchored rectangles and packings.
//!
//! An [`Instance`] is Alice's point set in the unit square; it always contains
//! the origin. A [`Packing`] is Bob's answer: axis-parallel rectangles, each
//! with an instance point as its lower-left corner, with pairwise disjoint
//! interiors and no instance point strictly inside any of them.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Result<Self> {
        let unit = |v: &Scalar| *v >= Scalar::zero() && *v <= Scalar::one();
        if !unit(&x) || !unit(&y) {
            return Err(Error::OutsideUnitSquare(x.to_string(), y.to_string()));
        }
        Ok(Point { x, y })
    }

    pub fn origin() -> Self {
        Point {
            x: Scalar::zero(),
            y: Scalar::zero(),
        }
    }

    /// Convenience constructor from small fractions, e.g. `Point::ratio((1, 2), (3, 4))`.
    pub fn ratio(x: (i64, i64), y: (i64, i64)) -> Result<Self> {
        Point::new(Scalar::ratio(x.0, x.1), Scalar::ratio(y.0, y.1))
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Weak dominance: `self` is at or below-left of `other` in both coordinates.
    pub fn weakly_dominates(&self, other: &Point) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

/// A game position: distinct points of the unit square including the origin.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    points: Vec<Point>,
}

impl Instance {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(p.x.to_string(), p.y.to_string()));
            }
        }
        if !points.iter().any(Point::is_origin) {
            return Err(Error::OriginRequired);
        }
        Ok(Instance { points })
    }

    /// The one-point instance `{(0,0)}`.
    pub fn origin_only() -> Self {
        Instance {
            points: vec![Point::origin()],
        }
    }

    /// Parses the instance text format: one `x y` pair per line, coordinates
    /// as integers, fractions or decimals, `#` comment lines and blank lines
    /// ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        let mut seen = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::MalformedLine {
                    line: line_no,
                    text: raw.to_string(),
                });
            }
            let x: Scalar = tokens[0].parse().map_err(|e: Error| e.at_line(line_no))?;
            let y: Scalar = tokens[1].parse().map_err(|e: Error| e.at_line(line_no))?;
            let p = Point::new(x, y).map_err(|e| e.at_line(line_no))?;
            if !seen.insert(p.clone()) {
                return Err(Error::DuplicatePoint(p.x.to_string(), p.y.to_string()).at_line(line_no));
            }
            points.push(p);
        }
        Instance::new(points)
    }

    /// Canonical text form; fractions in lowest terms, one point per line.
    pub fn to_text(&self) -> String {
        self.points.iter().map(|p| format!("{p}\n")).collect()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    /// Returns a copy with `p` appended, failing on duplicates.
    pub fn with_point(&self, p: Point) -> Result<Self> {
        let mut pts = self.points.clone();
        pts.push(p);
        Instance::new(pts)
    }

    /// Points sorted lexicographically; used as a canonical key.
    pub fn sorted_points(&self) -> Vec<Point> {
        let mut v = self.points.clone();
        v.sort();
        v
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points.iter()).finish()
    }
}

/// Axis-parallel rectangle `[anchor.x, right] x [anchor.y, top]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AnchoredRect {
    pub anchor: Point,
    pub right: Scalar,
    pub top: Scalar,
}

impl AnchoredRect {
    pub fn new(anchor: Point, right: Scalar, top: Scalar) -> Result<Self> {
        if right < anchor.x || right > Scalar::one() || top < anchor.y || top > Scalar::one() {
            return Err(Error::InvalidRect(format!(
                "anchor ({}, {}) right {} top {}",
                anchor.x, anchor.y, right, top
            )));
        }
        Ok(AnchoredRect { anchor, right, top })
    }

    pub fn width(&self) -> Scalar {
        &self.right - &self.anchor.x
    }

    pub fn height(&self) -> Scalar {
        &self.top - &self.anchor.y
    }

    pub fn area(&self) -> Scalar {
        self.width() * self.height()
    }

    /// True iff `p` lies in the open interior.
    pub fn contains_in_interior(&self, p: &Point) -> bool {
        self.anchor.x < p.x && p.x < self.right && self.anchor.y < p.y && p.y < self.top
    }
}

impl fmt::Debug for AnchoredRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]x[{}, {}]",
            self.anchor.x, self.right, self.anchor.y, self.top
        )
    }
}

pub fn rect_area(r: &AnchoredRect) -> Scalar {
    r.area()
}

/// True iff the open interiors of `a` and `b` do not meet. A zero-area
/// rectangle has empty interior and is disjoint from everything.
pub fn interiors_disjoint(a: &AnchoredRect, b: &AnchoredRect) -> bool {
    if a.area().is_zero() || b.area().is_zero() {
        return true;
    }
    let x_overlap = a.anchor.x < b.right && b.anchor.x < a.right;
    let y_overlap = a.anchor.y < b.top && b.anchor.y < a.top;
    !(x_overlap && y_overlap)
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct Packing {
    pub rects: Vec<AnchoredRect>,
}

impl Packing {
    pub fn new(rects: Vec<AnchoredRect>) -> Self {
        Packing { rects }
    }

    pub fn area(&self) -> Scalar {
        self.rects.iter().map(AnchoredRect::area).sum()
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Lines `x(p) y(p) right top`, one per rectangle.
    pub fn to_lines(&self) -> String {
        self.rects
            .iter()
            .map(|r| format!("{} {} {} {}\n", r.anchor.x, r.anchor.y, r.right, r.top))
            .collect()
    }

    /// Reads rectangles from text. Every line with exactly four numeric
    /// tokens is a rectangle; blank lines, `#` comments and `key value...`
    /// lines whose first token is not a number are skipped, so a solve
    /// report is itself a valid packing file.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rects = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let first_is_number = tokens[0].parse::<Scalar>().is_ok();
            if !first_is_number {
                continue;
            }
            if tokens.len() != 4 {
                return Err(Error::MalformedLine {
                    line: line_no,
                    text: raw.to_string(),
                });
            }
            let vals: Vec<Scalar> = tokens
                .iter()
                .map(|t| t.parse::<Scalar>())
                .collect::<Result<_>>()
                .map_err(|e| e.at_line(line_no))?;
            let anchor = Point::new(vals[0].clone(), vals[1].clone()).map_err(|e| e.at_line(line_no))?;
            let rect = AnchoredRect::new(anchor, vals[2].clone(), vals[3].clone())
                .map_err(|e| e.at_line(line_no))?;
            rects.push(rect);
        }
        Ok(Packing { rects })
    }
}

impl fmt::Debug for Packing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rects.iter()).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Rectangle `rect` is anchored at a point not in the instance.
    ForeignAnchor { rect: usize },
    /// Rectangles `first` and `second` share an anchor.
    DuplicateAnchor { first: usize, second: usize },
    /// An instance point lies strictly inside rectangle `rect`.
    ContainsPoint { rect: usize, point: Point },
    /// Rectangles `first` and `second` have overlapping interiors.
    Overlap { first: usize, second: usize },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::ForeignAnchor { .. } => "foreign anchor",
            Violation::DuplicateAnchor { .. } => "duplicate anchor",
            Violation::ContainsPoint { .. } => "contains point",
            Violation::Overlap { .. } => "overlap",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ForeignAnchor { rect } => write!(f, "foreign anchor in rectangle {rect}"),
            Violation::DuplicateAnchor { first, second } => {
                write!(f, "duplicate anchor in rectangles {first} and {second}")
            }
            Violation::ContainsPoint { rect, point } => {
                write!(f, "rectangle {rect} contains point {point:?} in its interior")
            }
            Violation::Overlap { first, second } => {
                write!(f, "rectangles {first} and {second} overlap")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingReport {
    pub area: Scalar,
    pub violation: Option<Violation>,
}

impl PackingReport {
    pub fn passes(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks a packing against an instance and reports the first violation.
pub fn validate_packing(inst: &Instance, packing: &Packing) -> PackingReport {
    PackingReport {
        area: packing.area(),
        violation: first_violation(inst, packing),
    }
}

fn first_violation(inst: &Instance, packing: &Packing) -> Option<Violation> {
    let rects = &packing.rects;
    for (i, r) in rects.iter().enumerate() {
        if !inst.contains(&r.anchor) {
            return Some(Violation::ForeignAnchor { rect: i });
        }
        if let Some(j) = rects[..i].iter().position(|o| o.anchor == r.anchor) {
            return Some(Violation::DuplicateAnchor { first: j, second: i });
        }
        if let Some(p) = inst.points().iter().find(|p| r.contains_in_interior(p)) {
            return Some(Violation::ContainsPoint {
                rect: i,
                point: p.clone(),
            });
        }
    }
    for i in 0..rects.len() {
        for j in i + 1..rects.len() {
            if !interiors_disjoint(&rects[i], &rects[j]) {
                return Some(Violation::Overlap { first: i, second: j });
            }
        }
    }
    None
}
