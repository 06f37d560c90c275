use serde::{Deserialize, Serialize};

use crate::clean::{oracle_table, CleanKind};
use crate::error::Result;
use crate::formal::FMContext;

pub const CENSUS_HEADER: &str = "ring,s,total,units,idempotents,jacobson,sc,sjc,snc";

/// Element counts of one M2(R;s), all by exhaustive scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub ring: String,
    pub s: String,
    pub total: u64,
    pub units: u64,
    pub idempotents: u64,
    pub jacobson: u64,
    pub sc: u64,
    pub sjc: u64,
    pub snc: u64,
}

impl CensusRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.ring,
            self.s,
            self.total,
            self.units,
            self.idempotents,
            self.jacobson,
            self.sc,
            self.sjc,
            self.snc
        )
    }
}

/// Counts units, idempotents, radical members and the three clean kinds.
/// Refused above the enumeration cap.
pub fn census(ctx: &FMContext, ring_name: &str) -> Result<CensusRow> {
    let count = |flags: &[bool]| flags.iter().filter(|&&f| f).count() as u64;
    let total = ctx.matrix_count();
    let mut units = 0;
    let mut jacobson = 0;
    for i in 0..total as usize {
        let m = ctx.matrix(i);
        units += ctx.is_unit_exhaustive(&m)? as u64;
        jacobson += ctx.in_jacobson(&m) as u64;
    }
    Ok(CensusRow {
        ring: ring_name.to_string(),
        s: ctx.base().name(ctx.s()).to_string(),
        total,
        units,
        idempotents: ctx.idempotents()?.len() as u64,
        jacobson,
        sc: count(oracle_table(ctx, CleanKind::StronglyClean)?),
        sjc: count(oracle_table(ctx, CleanKind::StronglyJClean)?),
        snc: count(oracle_table(ctx, CleanKind::StronglyNilClean)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ring::ElementId;
    use crate::Caps;

    fn row(name: &str, s: u16) -> CensusRow {
        let ring = catalog::get(name).unwrap();
        let ctx = FMContext::from_catalog(&ring, ElementId(s), Caps::default()).unwrap();
        census(&ctx, name).unwrap()
    }

    #[test]
    fn z2_with_s_one() {
        assert_eq!(row("z2", 1).csv(), "z2,1,16,6,8,1,16,8,14");
    }

    #[test]
    fn radical_count_for_z4_s_two() {
        let r = row("z4", 2);
        assert_eq!(r.total, 256);
        assert_eq!(r.jacobson, 64);
    }
}
