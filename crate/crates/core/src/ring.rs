//! The session ring `R = F_p[x_1..x_m] / I`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::vector::FreeVector;

/// Coefficient field, variables, monomial order and the defining ideal.
///
/// The ideal is stored as its reduced Gröbner basis. A ring is immutable once
/// built and is shared between modules through an `Arc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
    ideal: Vec<Poly>,
}

impl Ring {
    /// A polynomial ring with no quotient.
    pub fn polynomial(p: u32, vars: &[&str], order: MonomialOrder) -> Result<Arc<Ring>> {
        Ok(Arc::new(Self::bare(p, vars.iter().map(|v| v.to_string()).collect(), order)?))
    }

    /// `F_p[vars] / (ideal)`, with the generators given as strings.
    pub fn quotient(p: u32, vars: &[&str], order: MonomialOrder, ideal: &[&str]) -> Result<Arc<Ring>> {
        let base = Self::bare(p, vars.iter().map(|v| v.to_string()).collect(), order)?;
        let gens = ideal
            .iter()
            .map(|s| Poly::parse(&base, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(base.with_ideal(gens)))
    }

    pub fn new(p: u32, vars: Vec<String>, order: MonomialOrder, ideal: Vec<Poly>) -> Result<Arc<Ring>> {
        Ok(Arc::new(Self::bare(p, vars, order)?.with_ideal(ideal)))
    }

    /// Builds the ring without an ideal; used while parsing ideal generators.
    pub fn bare(p: u32, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        let field = PrimeField::new(p)?;
        if vars.is_empty() {
            return Err(Error::InvalidArgument("ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("bad variable name `{v}`")));
            }
        }
        Ok(Ring { field, vars, order, ideal: Vec::new() })
    }

    pub fn with_ideal(mut self, gens: Vec<Poly>) -> Ring {
        let vecs: Vec<FreeVector> = gens.into_iter().map(FreeVector::scalar).collect();
        self.ideal = Vec::new();
        let gb = groebner::buchberger(&self, &vecs);
        self.ideal = gb.into_iter().map(|v| v.into_components().pop().unwrap()).collect();
        self
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Reduced Gröbner basis of the defining ideal.
    pub fn ideal(&self) -> &[Poly] {
        &self.ideal
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.ideal.is_empty()
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::monomial(Monomial::var_power(self.nvars(), i, 1), 1)
    }

    pub fn parse_poly(&self, s: &str) -> Result<Poly> {
        Poly::parse(self, s)
    }

    /// Reduces a polynomial modulo the defining ideal.
    pub fn reduce(&self, f: &Poly) -> Poly {
        if self.ideal.is_empty() {
            return f.clone();
        }
        groebner::reduce_poly(self, f, &self.ideal)
    }

    /// Whether the ring equals zero, i.e. `1 ∈ I`.
    pub fn is_zero_ring(&self) -> bool {
        self.ideal.iter().any(|g| g.is_constant() && !g.is_zero())
    }
}
