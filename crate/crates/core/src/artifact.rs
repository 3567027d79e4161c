//! JSON form of a factorization. Every polynomial is stored as canonical
//! expression text over the variables of `input`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclo::lcm;
use crate::epoly::{EPoly, Unit};
use crate::error::{Error, Result};
use crate::expr::{elaborate, format_coeff, format_epoly, format_exponent, infer_vars, parse, ElabOptions};
use crate::ritt::Factorization;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Artifact {
    pub input: String,
    pub ambient_order: u32,
    pub unit: UnitText,
    pub classical: Vec<FactorText>,
    pub simple_blocks: Vec<BlockText>,
    pub nonsimple: Vec<FactorText>,
    /// Wall-clock milliseconds per stage.
    pub timings: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitText {
    pub scalar: String,
    /// `α` in `u·E(α)`.
    pub exponent: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorText {
    pub factor: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockText {
    pub support_line: String,
    pub block: String,
    pub parts: Vec<FactorText>,
}

impl Artifact {
    pub fn new(input: &str, vars: &[String], fac: &Factorization, timings: BTreeMap<String, f64>) -> Self {
        let order = fac.ambient_order;
        let epoly_list = |v: &[(EPoly, u32)]| {
            v.iter().map(|(g, m)| FactorText { factor: format_epoly(g, vars), multiplicity: *m }).collect()
        };
        Artifact {
            input: input.to_string(),
            ambient_order: order,
            unit: UnitText {
                scalar: fac.unit.scalar.to_string(),
                exponent: format_exponent(&fac.unit.exponent, vars, order),
            },
            classical: fac
                .classical
                .iter()
                .map(|(c, m)| FactorText { factor: format_coeff(c, vars), multiplicity: *m })
                .collect(),
            simple_blocks: fac
                .simple_blocks
                .iter()
                .map(|b| BlockText {
                    support_line: format_exponent(&b.support_line, vars, order),
                    block: format_epoly(&b.block, vars),
                    parts: epoly_list(&b.parts),
                })
                .collect(),
            nonsimple: epoly_list(&fac.nonsimple),
            timings,
        }
    }

    /// Re-parses every polynomial and checks `unit · ∏ parts = input`
    /// exactly. Simple blocks must also equal the product of their parts.
    pub fn verify(&self, height_cap: u32) -> Result<bool> {
        let vars = infer_vars(&parse(&self.input)?);
        let opts = ElabOptions { vars: Some(vars), order: self.ambient_order.max(1), height_cap, ..Default::default() };
        let read = |s: &str| -> Result<EPoly> { Ok(elaborate(&parse(s)?, &opts)?.0) };
        let input = read(&self.input)?;
        let mut order = lcm(input.order(), self.ambient_order.max(1));
        let scalar = read(&self.unit.scalar)?
            .as_unit()
            .filter(|u| u.exponent.is_zero())
            .ok_or_else(|| Error::InvalidArgument("unit scalar is not a nonzero constant".into()))?
            .scalar;
        let exponent = read(&self.unit.exponent)?;
        order = lcm(order, lcm(scalar.order(), exponent.order()));
        let unit = Unit { scalar, exponent: exponent.embed(order).to_exponent() };
        let mut prod = EPoly::one(input.nvars(), order).mul_unit(&unit);
        let times = |prod: &mut EPoly, parts: &[FactorText]| -> Result<EPoly> {
            let mut local = EPoly::one(input.nvars(), 1);
            for p in parts {
                let g = read(&p.factor)?.pow(p.multiplicity);
                local = local.mul(&g)?;
            }
            *prod = prod.mul(&local)?;
            Ok(local)
        };
        times(&mut prod, &self.classical)?;
        times(&mut prod, &self.nonsimple)?;
        for b in &self.simple_blocks {
            let block = read(&b.block)?;
            let parts = times(&mut EPoly::one(input.nvars(), 1), &b.parts)?;
            if !b.parts.is_empty() && parts != block {
                return Ok(false);
            }
            prod = prod.mul(&block)?;
        }
        Ok(prod == input.embed(lcm(order, prod.order())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifact serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse { message: e.to_string(), line: e.line(), column: e.column() })
    }
}
