use super::certificate::{CofactorCert, Subject};
use super::{FieldError, VectorField};
use crate::polycore::{exact_div, radical};
use crate::QPoly;

/// `v_1 ⊞ ... ⊞ v_n` on `(x1, y1, ..., xn, yn)`, acting block-diagonally.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductField {
    blocks: Vec<VectorField>,
    // Block components rewritten in the block's own coordinates.
    components: Vec<(QPoly, QPoly)>,
}

pub fn product_field(fields: &[VectorField]) -> Result<ProductField, FieldError> {
    if fields.is_empty() {
        return Err(FieldError::NoBlocks);
    }
    let components = fields
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let (xi, yi) = ProductField::coords(i);
            let map = [("x", xi.as_str()), ("y", yi.as_str())];
            (v.f().rename(&map), v.g().rename(&map))
        })
        .collect();
    Ok(ProductField {
        blocks: fields.to_vec(),
        components,
    })
}

impl ProductField {
    /// Coordinates of block `i` (zero-based): `x{i+1}, y{i+1}`.
    pub fn coords(i: usize) -> (String, String) {
        (format!("x{}", i + 1), format!("y{}", i + 1))
    }

    pub fn blocks(&self) -> &[VectorField] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The block derivation `sum f_i ∂/∂x_i + g_i ∂/∂y_i`.
    pub fn apply(&self, p: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for (i, (f, g)) in self.components.iter().enumerate() {
            let (xi, yi) = Self::coords(i);
            acc = &acc + &(f * &p.partial(&xi));
            acc = &acc + &(g * &p.partial(&yi));
        }
        acc
    }
}

/// Cofactor of the squarefree part of `P` under the block derivation.
pub fn product_hypersurface_invariant(
    p: &QPoly,
    pf: &ProductField,
) -> Result<Option<CofactorCert>, FieldError> {
    if p.is_constant() {
        return Err(FieldError::ConstantPolynomial);
    }
    let p = radical(p)?;
    let dp = pf.apply(&p);
    let Some(k) = exact_div(&dp, &p)? else {
        return Ok(None);
    };
    let ok = dp == &k * &p;
    Ok(CofactorCert::checked(Subject::Hypersurface(p), k, ok))
}

/// Invariance of the subvariety `{var_i = s_i}` where no `s_i` involves a
/// solved variable, so reduction modulo the ideal is substitution. The
/// diagonal `x1 = x2, y1 = y2` is the typical case.
pub fn is_invariant_graph(pf: &ProductField, graph: &[(&str, QPoly)]) -> Result<bool, FieldError> {
    if graph
        .iter()
        .any(|(_, s)| graph.iter().any(|(v, _)| s.involves(v)))
    {
        return Err(FieldError::NotTriangular);
    }
    for (v, s) in graph {
        let gen = &QPoly::var(v) - s;
        if !pf.apply(&gen).substitute_many(graph).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::apply_derivation;
    use super::super::tests::{c, cubic, rotation};
    use super::*;

    fn v(name: &str) -> QPoly {
        QPoly::var(name)
    }

    #[test]
    fn block_action() {
        let f = cubic();
        let one = product_field(std::slice::from_ref(&f)).unwrap();
        let p = &v("x1").pow(2) * &v("y1");
        let back = apply_derivation(&f, &p.rename(&[("x1", "x"), ("y1", "y")]));
        assert_eq!(one.apply(&p), back.rename(&[("x", "x1"), ("y", "y1")]));
        let two = product_field(&[f.clone(), f.clone()]).unwrap();
        let fx1 = f.f().rename(&[("x", "x1"), ("y", "y1")]);
        assert_eq!(two.apply(&v("x1")), fx1);
        let gy2 = f.g().rename(&[("x", "x2"), ("y", "y2")]);
        let expect = &(&fx1 * &v("y2")) + &(&v("x1") * &gy2);
        assert_eq!(two.apply(&(&v("x1") * &v("y2"))), expect);
        assert_eq!(product_field(&[]), Err(FieldError::NoBlocks));
    }

    #[test]
    fn hypersurface_cofactors() {
        let f = cubic();
        let pf = product_field(&[f.clone(), f]).unwrap();
        let cert = product_hypersurface_invariant(&(&v("y1") - &v("y2")), &pf)
            .unwrap()
            .unwrap();
        let expect = &(&(&(&v("y1").pow(2) + &(&v("y1") * &v("y2"))) + &v("y2").pow(2)) - &v("y1"))
            - &v("y2");
        assert_eq!(cert.cofactor(), &expect);
        let generic = &(&(&v("x1") * &v("y2")) + &v("x2").pow(2)) - &(&v("y1") + &c(3));
        assert!(product_hypersurface_invariant(&generic, &pf)
            .unwrap()
            .is_none());
    }

    #[test]
    fn diagonal_is_invariant() {
        for f in [cubic(), rotation()] {
            let pf = product_field(&[f.clone(), f]).unwrap();
            let diag = [("x2", v("x1")), ("y2", v("y1"))];
            assert!(is_invariant_graph(&pf, &diag).unwrap());
            let shifted = [("x2", &v("x1") + &c(1)), ("y2", v("y1"))];
            assert!(!is_invariant_graph(&pf, &shifted).unwrap());
        }
        let pf = product_field(&[cubic(), cubic()]).unwrap();
        let bad = [("x2", v("y2")), ("y2", v("x1"))];
        assert_eq!(
            is_invariant_graph(&pf, &bad),
            Err(FieldError::NotTriangular)
        );
    }
}
