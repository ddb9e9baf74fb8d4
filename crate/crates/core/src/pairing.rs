//! Gluing: the duality pairing between homotopy classes of a spectrum and its
//! dual, and composition of cobordism classes.
//!
//! Both operations work on wedges of spheres only. Equivariant classes are
//! first pushed to the nonequivariant groups through the forgetful map.
//!
//! A cell of a presentation and its dual cell share a label. For split free
//! cells the bottom sphere is dual to the top sphere of the dual cell, so
//! `x.bot` pairs with `x.top` and vice versa. A class `a ∈ π_p(S^m)` and a
//! class `b ∈ π_q(S^{-m})` pair to the product `a·b ∈ π_{p+q}(S⁰)`.
//!
//! On the `Σ(2, 3, 11)` bases, the `S^{-2}/S^2` pairs contribute through
//! `η·η² = 12ν`. The `S^{-1}/S^1` pair contributes through `ι·ν`. This gives
//! `12(a₁a₂ + b₁b₂) + c₁c₂ mod 24`. That formula is sometimes printed with
//! primed first-argument coordinates. Here they are the second argument's
//! coordinates.

use std::collections::BTreeMap;

use crate::cells::{morphism_stem, Cell, Rational};
use crate::error::{Error, Result};
use crate::homotopy::{forgetful_on_classes, homotopy_group, HomotopyGroup};
use crate::spectrum::SpectrumPresentation;
use crate::stems::{stem_product, StemElement};
use crate::zlinalg::GroupElement;

/// A class in a homotopy group of a presented spectrum.
#[derive(Clone, Debug)]
pub struct RelativeInvariantClass {
    group: HomotopyGroup,
    value: GroupElement,
}

impl RelativeInvariantClass {
    pub fn new(group: HomotopyGroup, value: GroupElement) -> Result<Self> {
        if value.group() != group.group() {
            return Err(Error::InvalidGroupElement(format!(
                "{value} is not an element of {}",
                group.group()
            )));
        }
        Ok(RelativeInvariantClass { group, value })
    }

    pub fn group(&self) -> &HomotopyGroup {
        &self.group
    }

    pub fn value(&self) -> &GroupElement {
        &self.value
    }

    pub fn degree(&self) -> i64 {
        self.group.degree()
    }

    pub fn is_equivariant(&self) -> bool {
        self.group.is_equivariant()
    }

    /// The nonequivariant image of this class.
    pub fn forget(&self) -> Result<RelativeInvariantClass> {
        if !self.is_equivariant() {
            return Ok(self.clone());
        }
        let target = homotopy_group(self.group.source(), self.degree(), false)?;
        let value = forgetful_on_classes(&self.group, &self.value, &target)?;
        RelativeInvariantClass::new(target, value)
    }
}

/// Label of the dual summand: `x.bot <-> x.top`, other labels unchanged.
pub fn dual_label(label: &str) -> String {
    if let Some(base) = label.strip_suffix(".bot") {
        format!("{base}.top")
    } else if let Some(base) = label.strip_suffix(".top") {
        format!("{base}.bot")
    } else {
        label.to_string()
    }
}

fn split_working(c: &RelativeInvariantClass) -> Result<&SpectrumPresentation> {
    if c.is_equivariant() {
        return Err(Error::BasisMismatch(
            "the pairing takes nonequivariant classes".into(),
        ));
    }
    let w = c.group.working();
    if !w.is_wedge() {
        return Err(Error::InvalidPresentation(format!(
            "cannot pair on a presentation that is not a wedge:\n{w}"
        )));
    }
    Ok(w)
}

/// `<x, y> ∈ π_{p+q}(S⁰)` for `x ∈ π_p(S)` and `y ∈ π_q(DS)`.
pub fn duality_pairing(
    x: &RelativeInvariantClass,
    y: &RelativeInvariantClass,
) -> Result<StemElement> {
    let dual = x.group.source().dualize()?;
    if &dual != y.group.source() {
        return Err(Error::BasisMismatch(
            "the second class does not live on the dual presentation".into(),
        ));
    }
    let wx = split_working(x)?;
    let wy = split_working(y)?;
    let mut partner = BTreeMap::new();
    for (i, c) in wx.cells().iter().enumerate() {
        let want = dual_label(&c.label);
        let j = wy
            .cells()
            .iter()
            .position(|d| d.label == want)
            .ok_or_else(|| Error::BasisMismatch(format!("no summand dual to {}", c.label)))?;
        if wy.cells()[j].cell.total_dim()? != -c.cell.total_dim()? {
            return Err(Error::BasisMismatch(format!(
                "{} and {want} are not dual spheres",
                c.label
            )));
        }
        partner.insert(i, j);
    }
    if partner.len() != wy.cells().len() {
        return Err(Error::BasisMismatch(
            "the two wedges have different numbers of summands".into(),
        ));
    }

    let xs = x.group.cell_components(&x.value)?;
    let ys = y.group.cell_components(&y.value)?;
    let mut total = StemElement::zero(x.degree() + y.degree())?;
    for (i, a) in xs {
        if let Some(b) = ys.get(&partner[&i]) {
            total = total.add(&stem_product(&a, b)?)?;
        }
    }
    Ok(total)
}

/// The gluing invariant of two pieces with boundaries `Y` and `-Y`.
pub fn glue(psi1: &RelativeInvariantClass, psi2: &RelativeInvariantClass) -> Result<StemElement> {
    duality_pairing(&psi1.forget()?, &psi2.forget()?)
}

/// `b₂⁺` and `d = (c² - σ)/8` of a cobordism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CobordismDegreeData {
    pub b_plus: i64,
    pub d_shift: Rational,
}

impl CobordismDegreeData {
    pub fn new(b_plus: i64, d_shift: Rational) -> Result<Self> {
        if 8 % d_shift.denom() != 0 {
            return Err(Error::DegreeMismatch(format!(
                "d = {d_shift} does not have denominator dividing 8"
            )));
        }
        Ok(CobordismDegreeData { b_plus, d_shift })
    }

    pub fn from_characteristic(b_plus: i64, c_squared: i64, signature: i64) -> Self {
        CobordismDegreeData {
            b_plus,
            d_shift: Rational::new(c_squared - signature, 8),
        }
    }
}

/// A stable map between wedges of spheres, as a matrix of stem elements
/// (rows: target summands, columns: source summands).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    source: SpectrumPresentation,
    target: SpectrumPresentation,
    matrix: Vec<Vec<StemElement>>,
}

fn sphere_stem(equivariant: bool, src: &Cell, dst: &Cell) -> Result<i64> {
    if src.is_free() || dst.is_free() {
        return Err(Error::UnsupportedMorphismGroup(format!(
            "maps {src} -> {dst} involving free cells"
        )));
    }
    if equivariant {
        morphism_stem(src, dst)
    } else {
        Ok(src.total_dim()? - dst.total_dim()?)
    }
}

impl MorphismClass {
    pub fn new(
        source: SpectrumPresentation,
        target: SpectrumPresentation,
        matrix: Vec<Vec<StemElement>>,
    ) -> Result<Self> {
        for p in [&source, &target] {
            if !p.is_wedge() {
                return Err(Error::InvalidPresentation(
                    "morphisms are only modelled between wedges".into(),
                ));
            }
        }
        if source.is_equivariant() != target.is_equivariant() {
            return Err(Error::DegreeMismatch(
                "source and target disagree about equivariance".into(),
            ));
        }
        if matrix.len() != target.cells().len()
            || matrix.iter().any(|row| row.len() != source.cells().len())
        {
            return Err(Error::DegreeMismatch(
                "matrix shape does not match the wedges".into(),
            ));
        }
        for (t, row) in matrix.iter().enumerate() {
            for (s, x) in row.iter().enumerate() {
                let stem = sphere_stem(
                    source.is_equivariant(),
                    &source.cells()[s].cell,
                    &target.cells()[t].cell,
                )?;
                if x.stem() != stem {
                    return Err(Error::DegreeMismatch(format!(
                        "entry ({t}, {s}) has stem {} but the group is pi_{stem}",
                        x.stem()
                    )));
                }
            }
        }
        Ok(MorphismClass {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(p: &SpectrumPresentation) -> Result<Self> {
        let n = p.cells().len();
        let matrix = (0..n)
            .map(|t| {
                (0..n)
                    .map(|s| {
                        let stem = sphere_stem(
                            p.is_equivariant(),
                            &p.cells()[s].cell,
                            &p.cells()[t].cell,
                        )?;
                        StemElement::new(stem, i64::from(s == t))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p.clone(), p.clone(), matrix)
    }

    /// A homotopy class `S^k → X` as a morphism out of a sphere.
    pub fn from_class(x: &RelativeInvariantClass) -> Result<Self> {
        let x = x.forget()?;
        let target = split_working(&x)?.clone();
        let source =
            SpectrumPresentation::wedge(false, vec![(Cell::sphere(x.degree()), "S".into())])?;
        let comps = x.group.cell_components(&x.value)?;
        let matrix = (0..target.cells().len())
            .map(|t| {
                let stem = x.degree() - target.cells()[t].cell.total_dim()?;
                Ok(vec![comps
                    .get(&t)
                    .copied()
                    .map_or_else(|| StemElement::zero(stem), Ok)?])
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, matrix)
    }

    pub fn source(&self) -> &SpectrumPresentation {
        &self.source
    }

    pub fn target(&self) -> &SpectrumPresentation {
        &self.target
    }

    pub fn entry(&self, target: usize, source: usize) -> StemElement {
        self.matrix[target][source]
    }

    /// `Σ^{m, q}` applied to source and target; the matrix is unchanged.
    pub fn suspend(&self, m: i64, q: Rational) -> Result<Self> {
        Self::new(
            self.source.suspend(m, q)?,
            self.target.suspend(m, q)?,
            self.matrix.clone(),
        )
    }
}

/// `(Σ^{b, -d} d2) ∘ d1` where `(b, d)` are the degree data of the first
/// cobordism. The target of `d1` must be the suspended source of `d2`.
pub fn compose_cobordism(
    d1: &MorphismClass,
    d2: &MorphismClass,
    deg1: CobordismDegreeData,
) -> Result<MorphismClass> {
    let shifted = d2.suspend(deg1.b_plus, -deg1.d_shift)?;
    if shifted.source != d1.target {
        return Err(Error::DegreeMismatch(format!(
            "cannot compose: {} is not the suspended source {}",
            d1.target, shifted.source
        )));
    }
    let rows = shifted.target.cells().len();
    let cols = d1.source.cells().len();
    let mid = d1.target.cells().len();
    let mut matrix = Vec::with_capacity(rows);
    for t in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for s in 0..cols {
            let stem = sphere_stem(
                d1.source.is_equivariant(),
                &d1.source.cells()[s].cell,
                &shifted.target.cells()[t].cell,
            )?;
            let mut acc = StemElement::zero(stem)?;
            for m in 0..mid {
                let (a, b) = (shifted.matrix[t][m], d1.matrix[m][s]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&stem_product(&a, &b)?)?;
            }
            row.push(acc);
        }
        matrix.push(row);
    }
    MorphismClass::new(d1.source.clone(), shifted.target, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{swf_brieskorn, BrieskornParams, Orientation};

    fn y() -> SpectrumPresentation {
        swf_brieskorn(BrieskornParams::new(11, Orientation::Negative).unwrap()).unwrap()
    }

    #[test]
    fn labels_swap() {
        assert_eq!(dual_label("x1.bot"), "x1.top");
        assert_eq!(dual_label("x1.top"), "x1.bot");
        assert_eq!(dual_label("theta"), "theta");
    }

    #[test]
    fn pairing_formula_spot_checks() {
        let g = homotopy_group(&y(), -1, false).unwrap();
        let h = homotopy_group(&y().dualize().unwrap(), 4, false).unwrap();
        let class = |grp: &HomotopyGroup, c: &[i64]| {
            RelativeInvariantClass::new(grp.clone(), grp.element(c).unwrap()).unwrap()
        };
        let v = |a: &[i64], b: &[i64]| {
            duality_pairing(&class(&g, a), &class(&h, b))
                .unwrap()
                .coeff()
        };
        assert_eq!(v(&[1, 0, 0], &[1, 0, 0]), 12);
        assert_eq!(v(&[1, 1, 0], &[1, 1, 0]), 0);
        assert_eq!(v(&[0, 0, 1], &[0, 0, 7]), 7);
        assert_eq!(v(&[0, 0, 3], &[1, 0, 5]), 15);
        assert_eq!(v(&[0, 0, 0], &[1, 1, 5]), 0);
    }

    #[test]
    fn glue_equivariant_generator() {
        let g = homotopy_group(&y(), -1, true).unwrap();
        let h = homotopy_group(&y().dualize().unwrap(), 4, false).unwrap();
        let psi1 = RelativeInvariantClass::new(g.clone(), g.group().generator(0).scale(&3.into()))
            .unwrap();
        let psi2 = RelativeInvariantClass::new(h.clone(), h.element(&[1, 1, 5]).unwrap()).unwrap();
        assert_eq!(glue(&psi1, &psi2).unwrap().coeff(), 15);
    }

    #[test]
    fn unit_pairing_on_spheres() {
        let s =
            SpectrumPresentation::wedge(false, vec![(Cell::sphere(0), "theta".into())]).unwrap();
        let g = homotopy_group(&s, 0, false).unwrap();
        let x = RelativeInvariantClass::new(g.clone(), g.group().generator(0)).unwrap();
        assert_eq!(
            duality_pairing(&x, &x).unwrap(),
            StemElement::generator(0).unwrap()
        );
    }

    #[test]
    fn composition_and_degrees() {
        assert_eq!(
            CobordismDegreeData::from_characteristic(1, -1, -1).d_shift,
            Rational::from_integer(0)
        );
        let s0 = SpectrumPresentation::wedge(false, vec![(Cell::sphere(0), "a".into())]).unwrap();
        let id = MorphismClass::identity(&s0).unwrap();
        let zero = CobordismDegreeData::new(0, Rational::from_integer(0)).unwrap();
        assert_eq!(compose_cobordism(&id, &id, zero).unwrap(), id);

        // η: S^1 -> S^0 followed by η²: S^0 -> S^{-2}, in total stem 3
        let s1 = SpectrumPresentation::wedge(false, vec![(Cell::sphere(1), "a".into())]).unwrap();
        let sm2 = SpectrumPresentation::wedge(false, vec![(Cell::sphere(-2), "a".into())]).unwrap();
        let eta = MorphismClass::new(
            s1.clone(),
            s0.clone(),
            vec![vec![StemElement::generator(1).unwrap()]],
        )
        .unwrap();
        let eta2 = MorphismClass::new(
            s0.clone(),
            sm2.clone(),
            vec![vec![StemElement::generator(2).unwrap()]],
        )
        .unwrap();
        let c = compose_cobordism(&eta, &eta2, zero).unwrap();
        assert_eq!(c.entry(0, 0), StemElement::new(3, 12).unwrap());

        // the target must match the suspended source
        let one = CobordismDegreeData::new(1, Rational::from_integer(0)).unwrap();
        assert!(matches!(
            compose_cobordism(&eta, &eta2, one),
            Err(Error::DegreeMismatch(_))
        ));
    }
}
