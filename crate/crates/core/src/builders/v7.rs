use crate::block::{Block, GroundSet, Sign};
use crate::error::{Error, Result};
use crate::ingredients::fano_structures;
use crate::signed::{signed_union, SignedBlockSet};
use crate::spectrum::admissibility;

// Blocks written as three 1-based digits; a leading '-' marks a negative block.
const B2: &[&str] = &["123", "145", "147", "156", "167", "246", "257", "346", "357", "-157", "-146"];
const B3: &[&str] = &["123", "147", "156", "235", "246", "257", "267", "347", "367", "456", "-467", "-256", "-237"];
const B5: &[&str] = &[
    "123", "136", "145", "147", "167", "235", "246", "267", "346", "347", "357", "456", "-467", "-345", "-236",
    "-146", "-137",
];
const B6: &[&str] = &[
    "123", "136", "145", "147", "156", "234", "235", "246", "257", "267", "357", "367", "456", "-567", "-245",
    "-237", "-236", "-146", "-135",
];
const B8: &[&str] = &[
    "123", "145", "147", "156", "167", "234", "235", "246", "257", "267", "346", "357", "367", "456", "457",
    "-567", "-467", "-345", "-245", "-237", "-236", "-157", "-146",
];

fn listed(ground: GroundSet, rows: &[&str]) -> SignedBlockSet {
    let entries = rows.iter().map(|r| {
        let (sign, digits) = match r.strip_prefix('-') {
            Some(d) => (Sign::Neg, d),
            None => (Sign::Pos, *r),
        };
        let p: Vec<u16> = digits.bytes().map(|b| (b - b'1') as u16).collect();
        (Block::triple(p[0], p[1], p[2]), sign)
    });
    SignedBlockSet::from_entries(ground, 3, entries).expect("catalog lists are simple")
}

/// The ST(7, s) catalog: the Fano plane, five listed designs and the full system.
pub fn build_v7(s: usize) -> Result<SignedBlockSet> {
    admissibility(7, s).map_err(|reason| Error::NotAdmissible { v: 7, s, reason })?;
    let ground = GroundSet::new(7)?;
    let fs = fano_structures();
    Ok(match s {
        0 => fs.f1.to_signed(),
        2 => listed(ground, B2),
        3 => listed(ground, B3),
        5 => listed(ground, B5),
        6 => listed(ground, B6),
        8 => listed(ground, B8),
        _ => {
            let rest = SignedBlockSet::unsigned(ground, 3, fs.f3.iter().copied())?;
            signed_union(&[rest, fs.f1.to_signed().negated(), fs.f2.to_signed().negated()])?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::{verify, VerifyKind};

    #[test]
    fn every_catalog_entry_verifies() {
        for s in [0, 2, 3, 5, 6, 8, 14] {
            let d = build_v7(s).unwrap();
            let r = verify(&d, VerifyKind::Design { expected_s: Some(s) });
            assert!(r.ok, "s={s}: {r}");
        }
    }

    #[test]
    fn listed_shapes() {
        let d = build_v7(2).unwrap();
        assert_eq!(d.len(), 11);
        let neg: Vec<String> = d.negative().map(|b| b.to_string()).collect();
        assert_eq!(neg, ["1 4 6", "1 5 7"]);
        let full = build_v7(14).unwrap();
        assert_eq!((full.pos_count(), full.neg_count()), (21, 14));
        assert!(build_v7(1).is_err());
    }
}
