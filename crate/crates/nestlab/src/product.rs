//! Transfer of nest structure between a space and its finite powers.
//!
//! Points of `X^I` are tuples over the base space, identified by mixed-radix
//! encoding: the tuple `(x_0, ..., x_{I-1})` has index `sum x_j * b^j` where
//! `b` is the base size, so coordinate `j` is digit `j` (least significant
//! first). Function spaces `F(X, Y)` are the power `Y^|X|` with coordinates
//! read as argument points.

use crate::error::{Error, Result};
use crate::nest::{is_nest, SeparationKind};
use crate::space::{FiniteSpace, PointSet, SubsetFamily};

/// A finite power of a base space with tuple points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductSpace {
    base: FiniteSpace,
    index_count: usize,
    points: FiniteSpace,
}

impl ProductSpace {
    pub fn new(base: FiniteSpace, index_count: usize) -> Result<Self> {
        if index_count == 0 {
            return Err(Error::input("a product needs at least one coordinate"));
        }
        let exponent: u32 = index_count
            .try_into()
            .map_err(|_| Error::input("coordinate count out of range"))?;
        let size = base
            .size()
            .checked_pow(exponent)
            .ok_or_else(|| Error::input("product size overflows"))?;
        if size > 1 << 20 {
            return Err(Error::capacity("product space size", size, 1 << 20));
        }
        Ok(ProductSpace {
            base,
            index_count,
            points: FiniteSpace::new(size)?,
        })
    }

    pub fn base(&self) -> FiniteSpace {
        self.base
    }

    pub fn index_count(&self) -> usize {
        self.index_count
    }

    /// The product's tuples as a flat space, usable by all finite-space
    /// machinery.
    pub fn point_space(&self) -> FiniteSpace {
        self.points
    }

    pub fn encode(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.index_count {
            return Err(Error::input(format!(
                "tuple has {} coordinates, expected {}",
                tuple.len(),
                self.index_count
            )));
        }
        let b = self.base.size();
        let mut index = 0;
        for (j, &x) in tuple.iter().enumerate() {
            if x >= b {
                return Err(Error::input(format!(
                    "coordinate {j} value {x} out of range for base size {b}"
                )));
            }
            index += x * b.pow(j as u32);
        }
        Ok(index)
    }

    /// Digit `j` of the point index.
    pub fn coordinate(&self, point: usize, j: usize) -> usize {
        let b = self.base.size();
        point / b.pow(j as u32) % b
    }

    pub fn decode(&self, point: usize) -> Vec<usize> {
        (0..self.index_count)
            .map(|j| self.coordinate(point, j))
            .collect()
    }

    fn check_coordinate(&self, j: usize) -> Result<()> {
        if j >= self.index_count {
            return Err(Error::input(format!(
                "coordinate {j} out of range for {} coordinates",
                self.index_count
            )));
        }
        Ok(())
    }

    fn check_product_family(&self, f: &SubsetFamily) -> Result<()> {
        if f.space() != self.points {
            return Err(Error::input("family does not live on the product space"));
        }
        Ok(())
    }

    fn check_base_family(&self, f: &SubsetFamily) -> Result<()> {
        if f.space() != self.base {
            return Err(Error::input("family does not live on the base space"));
        }
        Ok(())
    }
}

/// Coordinate image of a set: the `j`-th coordinates of its tuples.
pub fn project_set(p: &ProductSpace, s: &PointSet, j: usize) -> PointSet {
    let mut out = PointSet::empty(p.base());
    for point in s.iter() {
        out.insert(p.coordinate(point, j));
    }
    out
}

/// Cylinder over a base set: all tuples whose `j`-th coordinate lies in it.
pub fn preimage_set(p: &ProductSpace, s: &PointSet, j: usize) -> PointSet {
    let mut out = PointSet::empty(p.point_space());
    for point in p.point_space().points() {
        if s.contains(p.coordinate(point, j)) {
            out.insert(point);
        }
    }
    out
}

/// Coordinate image of a nest; duplicates collapse, the result is a nest.
pub fn project_nest(p: &ProductSpace, f: &SubsetFamily, j: usize) -> Result<SubsetFamily> {
    p.check_product_family(f)?;
    p.check_coordinate(j)?;
    if !is_nest(f) {
        return Err(Error::input("projection requires a nest"));
    }
    let sets = f.iter().map(|s| project_set(p, s, j)).collect();
    SubsetFamily::new(p.base(), sets)
}

/// Coordinate preimage of a nest; the result is a nest of cylinder sets.
pub fn preimage_nest(p: &ProductSpace, f: &SubsetFamily, j: usize) -> Result<SubsetFamily> {
    p.check_base_family(f)?;
    p.check_coordinate(j)?;
    if !is_nest(f) {
        return Err(Error::input("preimage requires a nest"));
    }
    let sets = f.iter().map(|s| preimage_set(p, s, j)).collect();
    SubsetFamily::new(p.point_space(), sets)
}

/// Weak separation with respect to coordinate `j`.
///
/// T0 asks that `l` separate every tuple pair differing in coordinate `j`
/// one way or the other. T1 (which needs the second family) asks that each
/// such pair be separated in both directions, one direction by a member of
/// `l` and the other by a member of `r`; which tuple sits on the `l` side is
/// free per pair. (A nest can never separate one pair both ways itself, so
/// the pair-ordered reading would be unsatisfiable for nests.)
pub fn weak_separation_kind(
    p: &ProductSpace,
    l: &SubsetFamily,
    r: Option<&SubsetFamily>,
    j: usize,
) -> Result<SeparationKind> {
    p.check_product_family(l)?;
    if let Some(r) = r {
        p.check_product_family(r)?;
    }
    p.check_coordinate(j)?;
    let space = p.point_space();
    let mut t0 = true;
    let mut t1 = r.is_some();
    for x in space.points() {
        for y in space.points() {
            if y <= x || p.coordinate(x, j) == p.coordinate(y, j) {
                continue;
            }
            let l_xy = l.iter().any(|s| s.contains(x) && !s.contains(y));
            let l_yx = l.iter().any(|s| s.contains(y) && !s.contains(x));
            t0 &= l_xy || l_yx;
            if let Some(r) = r {
                let r_xy = r.iter().any(|s| s.contains(x) && !s.contains(y));
                let r_yx = r.iter().any(|s| s.contains(y) && !s.contains(x));
                t1 &= (l_xy && r_yx) || (l_yx && r_xy);
            }
            if !t0 && !t1 {
                return Ok(SeparationKind::None);
            }
        }
    }
    Ok(if t1 {
        SeparationKind::T1
    } else if t0 {
        SeparationKind::T0
    } else {
        SeparationKind::None
    })
}

/// The coordinate condition: any tuple outside a member has its `j`-th
/// coordinate outside the member's projection.
pub fn projection_condition(p: &ProductSpace, f: &SubsetFamily, j: usize) -> Result<bool> {
    p.check_product_family(f)?;
    p.check_coordinate(j)?;
    for l in f.iter() {
        let image = project_set(p, l, j);
        for point in p.point_space().points() {
            if !l.contains(point) && image.contains(p.coordinate(point, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The function space F(X, Y) as the power Y^|X|; tuples are the functions.
pub fn function_space(domain_size: usize, codomain: FiniteSpace) -> Result<ProductSpace> {
    if domain_size == 0 {
        return Err(Error::input("function space needs a nonempty domain"));
    }
    ProductSpace::new(codomain, domain_size)
}

/// The point nest at argument `x`: sets of functions whose value at `x`
/// falls in a member of `l`. Identical to the coordinate preimage of `l`.
pub fn point_nest(p: &ProductSpace, x: usize, l: &SubsetFamily) -> Result<SubsetFamily> {
    preimage_nest(p, l, x)
}

/// Union over every argument point of the two point nests: the subbase of
/// the point-open topology.
pub fn point_open_subbase(
    p: &ProductSpace,
    ls: &SubsetFamily,
    rs: &SubsetFamily,
) -> Result<SubsetFamily> {
    p.check_base_family(ls)?;
    p.check_base_family(rs)?;
    if !is_nest(ls) || !is_nest(rs) {
        return Err(Error::input("point-open subbase requires two nests"));
    }
    let mut out = SubsetFamily::empty(p.point_space());
    for x in 0..p.index_count() {
        out = out.union_family(&point_nest(p, x, ls)?)?;
        out = out.union_family(&point_nest(p, x, rs)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nest::separation_kind;
    use crate::topology::generate_topology;

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::new(n).unwrap()
    }

    fn family(space: FiniteSpace, sets: &[&[usize]]) -> SubsetFamily {
        let sets = sets
            .iter()
            .map(|pts| PointSet::from_points(space, pts).unwrap())
            .collect();
        SubsetFamily::new(space, sets).unwrap()
    }

    fn square2() -> ProductSpace {
        ProductSpace::new(space(2), 2).unwrap()
    }

    fn tuple_set(p: &ProductSpace, tuples: &[&[usize]]) -> PointSet {
        let indices: Vec<usize> = tuples.iter().map(|t| p.encode(t).unwrap()).collect();
        PointSet::from_points(p.point_space(), &indices).unwrap()
    }

    #[test]
    fn encoding_round_trips() {
        let p = ProductSpace::new(space(3), 2).unwrap();
        assert_eq!(p.point_space().size(), 9);
        for point in p.point_space().points() {
            assert_eq!(p.encode(&p.decode(point)).unwrap(), point);
        }
        assert_eq!(p.encode(&[1, 2]).unwrap(), 1 + 2 * 3);
        assert!(p.encode(&[3, 0]).is_err());
        assert!(p.encode(&[0]).is_err());
    }

    #[test]
    fn projection_examples() {
        let p = square2();
        let f = SubsetFamily::new(
            p.point_space(),
            vec![
                tuple_set(&p, &[&[0, 0]]),
                tuple_set(&p, &[&[0, 0], &[1, 0]]),
            ],
        )
        .unwrap();
        let proj0 = project_nest(&p, &f, 0).unwrap();
        assert_eq!(proj0, family(space(2), &[&[0], &[0, 1]]));
        // Both members project to {0} on the second coordinate: collapsed.
        let proj1 = project_nest(&p, &f, 1).unwrap();
        assert_eq!(proj1, family(space(2), &[&[0]]));
    }

    #[test]
    fn preimage_examples() {
        let p = square2();
        let f = family(space(2), &[&[0]]);
        let pre = preimage_nest(&p, &f, 0).unwrap();
        assert_eq!(pre.len(), 1);
        assert_eq!(pre.sets()[0], tuple_set(&p, &[&[0, 0], &[0, 1]]));

        let empty = SubsetFamily::empty(space(2));
        assert!(preimage_nest(&p, &empty, 1).unwrap().is_empty());
    }

    #[test]
    fn non_nest_inputs_are_rejected() {
        let p = square2();
        let not_nest = family(space(2), &[&[0], &[1]]);
        assert!(preimage_nest(&p, &not_nest, 0).is_err());
        let product_not_nest = SubsetFamily::new(
            p.point_space(),
            vec![tuple_set(&p, &[&[0, 0]]), tuple_set(&p, &[&[1, 1]])],
        )
        .unwrap();
        assert!(project_nest(&p, &product_not_nest, 0).is_err());
    }

    #[test]
    fn weak_separation_examples() {
        let p = square2();
        let l = preimage_nest(&p, &family(space(2), &[&[0]]), 0).unwrap();
        let r = preimage_nest(&p, &family(space(2), &[&[1]]), 0).unwrap();
        assert_eq!(
            weak_separation_kind(&p, &l, Some(&r), 0).unwrap(),
            SeparationKind::T1
        );
        assert_eq!(
            weak_separation_kind(&p, &l, None, 0).unwrap(),
            SeparationKind::T0
        );
        let everything =
            SubsetFamily::new(p.point_space(), vec![PointSet::full(p.point_space())]).unwrap();
        assert_eq!(
            weak_separation_kind(&p, &everything, None, 0).unwrap(),
            SeparationKind::None
        );
    }

    #[test]
    fn projection_condition_examples() {
        let p = square2();
        let pre = preimage_nest(&p, &family(space(2), &[&[0]]), 0).unwrap();
        assert!(projection_condition(&p, &pre, 0).unwrap());

        // {(0,0)} misses (0,1) yet their first coordinates agree.
        let single = SubsetFamily::new(p.point_space(), vec![tuple_set(&p, &[&[0, 0]])]).unwrap();
        assert!(!projection_condition(&p, &single, 0).unwrap());

        let empty = SubsetFamily::empty(p.point_space());
        assert!(projection_condition(&p, &empty, 0).unwrap());
    }

    #[test]
    fn function_space_sizes() {
        assert_eq!(function_space(2, space(2)).unwrap().point_space().size(), 4);
        assert_eq!(function_space(1, space(3)).unwrap().point_space().size(), 3);
        assert_eq!(function_space(3, space(2)).unwrap().point_space().size(), 8);
    }

    #[test]
    fn point_nest_examples() {
        let fs = function_space(2, space(2)).unwrap();
        let l = family(space(2), &[&[0]]);
        let at0 = point_nest(&fs, 0, &l).unwrap();
        // The two functions sending argument 0 to value 0.
        assert_eq!(at0.sets()[0], tuple_set(&fs, &[&[0, 0], &[0, 1]]));

        let whole = family(space(2), &[&[0, 1]]);
        let all = point_nest(&fs, 1, &whole).unwrap();
        assert!(all.sets()[0].is_full());

        assert_eq!(at0, preimage_nest(&fs, &l, 0).unwrap());
    }

    #[test]
    fn point_open_subbase_generates_discrete_for_t1_nests() {
        let fs = function_space(2, space(2)).unwrap();
        let ls = family(space(2), &[&[0]]);
        let rs = family(space(2), &[&[1]]);
        let sub = point_open_subbase(&fs, &ls, &rs).unwrap();
        assert_eq!(sub.len(), 4);
        let t = generate_topology(fs.point_space(), &sub).unwrap();
        assert!(t.is_discrete());
        assert_eq!(separation_kind(&sub), SeparationKind::T1);
    }

    #[test]
    fn empty_nests_give_empty_subbase() {
        let fs = function_space(2, space(2)).unwrap();
        let empty = SubsetFamily::empty(space(2));
        let sub = point_open_subbase(&fs, &empty, &empty).unwrap();
        assert!(sub.is_empty());
    }
}
