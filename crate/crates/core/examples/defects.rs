//! Saturation defects of the Jacobian ideal and where they vanish.

use ziegler::builtins::Builtin;
use ziegler::singular::defect_sequence;

fn main() {
    for b in [Builtin::Az, Builtin::AzPrime, Builtin::Bz] {
        let r = defect_sequence(&b.arrangement()).expect("reduced arrangement");
        let defects: Vec<i64> = r.entries.iter().map(|e| e.defect).collect();
        println!(
            "{:<4} tau={} mdr={} vanishes above {}: {} {:?}",
            b.name(),
            r.tau,
            r.mdr,
            r.threshold,
            r.matches_threshold(),
            defects
        );
    }
}
