//! Affine group law on `y² = x³ + a2·x² + a4·x + a6`, used only by the
//! brute-force structure checks.

use crate::field::{Elem, FieldTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine(Elem, Elem),
}

#[derive(Clone, Copy, Debug)]
pub struct LongWeierstrass {
    pub a2: Elem,
    pub a4: Elem,
    pub a6: Elem,
}

impl LongWeierstrass {
    pub fn rhs(&self, f: &FieldTable, x: Elem) -> Elem {
        let x2 = f.mul(x, x);
        let x3 = f.mul(x2, x);
        f.add(f.add(x3, f.mul(self.a2, x2)), f.add(f.mul(self.a4, x), self.a6))
    }

    pub fn points(&self, f: &FieldTable) -> Vec<Point> {
        let mut pts = vec![Point::Infinity];
        for x in f.elements() {
            let v = self.rhs(f, x);
            if let Some(y) = f.sqrt(v) {
                pts.push(Point::Affine(x, y));
                if y != 0 {
                    pts.push(Point::Affine(x, f.neg(y)));
                }
            }
        }
        pts
    }

    pub fn neg(&self, f: &FieldTable, pt: Point) -> Point {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x, f.neg(y)),
        }
    }

    pub fn add(&self, f: &FieldTable, a: Point, b: Point) -> Point {
        let (x1, y1, x2, y2) = match (a, b) {
            (Point::Infinity, _) => return b,
            (_, Point::Infinity) => return a,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return Point::Infinity;
            }
            // tangent: (3x² + 2a2·x + a4) / 2y
            let three_x2 = f.mul(f.from_int(3), f.mul(x1, x1));
            let two_a2x = f.mul(f.from_int(2), f.mul(self.a2, x1));
            let num = f.add(f.add(three_x2, two_a2x), self.a4);
            f.div(num, f.mul(f.from_int(2), y1)).expect("2y nonzero")
        } else {
            f.div(f.sub(y2, y1), f.sub(x2, x1)).expect("distinct x")
        };
        let x3 = f.sub(f.sub(f.sub(f.mul(slope, slope), self.a2), x1), x2);
        let y3 = f.sub(f.mul(slope, f.sub(x1, x3)), y1);
        Point::Affine(x3, y3)
    }

    pub fn double(&self, f: &FieldTable, a: Point) -> Point {
        self.add(f, a, a)
    }

    /// Number of rational points killed by 4 (16 iff `Z/4 × Z/4 ⊆ E(F_q)`).
    pub fn four_torsion_count(&self, f: &FieldTable) -> usize {
        self.points(f)
            .into_iter()
            .filter(|&pt| self.double(f, self.double(f, pt)) == Point::Infinity)
            .count()
    }

    /// Number of rational points killed by 2 (4 iff full 2-torsion).
    pub fn two_torsion_count(&self, f: &FieldTable) -> usize {
        1 + f.elements().filter(|&x| self.rhs(f, x) == 0).count()
    }
}
