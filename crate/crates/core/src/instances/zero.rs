use crate::additive::Additive;
use crate::error::{Error, Result};
use crate::kernel::{Bounds, Elem, ElemMap, Instance, Morphism, Obj, Probe, Witness};
use crate::monoidal::Cartesian;

/// The degenerate additive category in which every object is a zero object:
/// each hom-set has exactly one map, so `1_K = 0 = -1_K`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroCat;

/// The unique map between two objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    dom: Obj,
    cod: Obj,
}

impl Morphism for Point {
    fn dom(&self) -> &Obj {
        &self.dom
    }
    fn cod(&self) -> &Obj {
        &self.cod
    }
}

impl ZeroCat {
    pub fn unique(&self, dom: &Obj, cod: &Obj) -> Point {
        Point {
            dom: dom.clone(),
            cod: cod.clone(),
        }
    }
}

impl Instance for ZeroCat {
    type Mor = Point;

    fn name(&self) -> &'static str {
        "zero"
    }

    fn budget(&self) -> usize {
        1
    }

    fn id(&self, a: &Obj) -> Result<Point> {
        Ok(self.unique(a, a))
    }

    fn compose(&self, f: &Point, g: &Point) -> Result<Point> {
        if f.cod != g.dom {
            return Err(Error::boundary(&g.dom, &f.cod));
        }
        Ok(self.unique(&f.dom, &g.cod))
    }

    fn tensor(&self, f: &Point, g: &Point) -> Result<Point> {
        Ok(self.unique(&Obj::tensor(&f.dom, &g.dom), &Obj::tensor(&f.cod, &g.cod)))
    }

    fn from_fn(&self, dom: &Obj, cod: &Obj, _f: ElemMap, _b: Bounds) -> Result<Point> {
        Ok(self.unique(dom, cod))
    }

    fn from_pairs(&self, dom: &Obj, cod: &Obj, _pairs: &[(Elem, Elem)]) -> Result<Point> {
        Ok(self.unique(dom, cod))
    }

    fn compare(&self, f: &Point, g: &Point, _probe: &Probe) -> Result<Option<Witness>> {
        self.check_parallel(f, g)?;
        Ok(None)
    }

    fn payload_eq(&self, f: &Point, g: &Point) -> bool {
        f == g
    }
}

impl Additive for ZeroCat {
    fn add(&self, f: &Point, g: &Point) -> Result<Point> {
        self.check_parallel(f, g)?;
        Ok(f.clone())
    }

    fn zero(&self, a: &Obj, b: &Obj) -> Result<Point> {
        Ok(self.unique(a, b))
    }

    fn native_neg(&self, f: &Point) -> Option<Result<Point>> {
        Some(Ok(f.clone()))
    }
}

impl Cartesian for ZeroCat {
    fn terminal(&self, a: &Obj) -> Result<Point> {
        Ok(self.unique(a, &Obj::Unit))
    }

    fn pairing(&self, f: &Point, g: &Point) -> Result<Point> {
        if f.dom != g.dom {
            return Err(Error::boundary(&f.dom, &g.dom));
        }
        Ok(self.unique(&f.dom, &Obj::tensor(&f.cod, &g.cod)))
    }
}
