use serde::Serialize;

use super::append_balance;
use crate::cones::{is_essential, ConeSpec, DiscVector};
use crate::error::{Error, Result};
use crate::graphs::IntFlow;

/// Disc vector that is essential exactly when no proper nonempty subset of
/// `a` sums to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EssentialGadget {
    pub a: Vec<i64>,
    pub spec: ConeSpec,
    pub disc: DiscVector,
}

impl EssentialGadget {
    pub fn is_essential(&self) -> bool {
        is_essential(&self.spec, &self.disc)
    }
}

/// For a zero-sum list `a_1..a_{m+1}` of nonzero entries: weights
/// `x = (m, 1, a_1, −1, …, a_{m+1}, −1)` and one triangle
/// `hub → a_i → (−1)_i → hub` per entry, the hub being the weight-1 vertex.
pub fn essential_gadget(a: &[i64]) -> Result<EssentialGadget> {
    if a.len() < 2 {
        return Err(Error::precondition("gadget needs at least two entries"));
    }
    if a.contains(&0) {
        return Err(Error::precondition("gadget entries must be nonzero"));
    }
    if a.iter().sum::<i64>() != 0 {
        return Err(Error::precondition("gadget entries must sum to zero"));
    }
    let m = a.len() - 1;
    let n = 2 * (m + 1) + 2;
    let mut x = vec![m as i64, 1];
    for &ai in a {
        x.push(ai);
        x.push(-1);
    }
    let spec = ConeSpec::single(x)?;
    let hub = 1;
    let mut d = IntFlow::zero(n);
    for i in 0..=m {
        d = d.add(&IntFlow::cycle(n, &[hub, 2 + 2 * i, 3 + 2 * i]));
    }
    let disc = DiscVector::new(&spec, d)?;
    Ok(EssentialGadget {
        a: a.to_vec(),
        spec,
        disc,
    })
}

/// Gadget for CO SUBSET SUM on `a_1..a_m`: the balancing entry is appended
/// first, which must be nonzero.
pub fn coss_gadget(a: &[i64]) -> Result<EssentialGadget> {
    essential_gadget(&append_balance(a)?)
}
