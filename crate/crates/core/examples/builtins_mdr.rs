//! mdr and minimal syzygy generator degrees of every built-in arrangement.

use ziegler::builtins::Builtin;
use ziegler::syzygy::{default_cap, minimal_generator_degrees};

fn main() {
    for b in Builtin::ALL {
        let a = b.arrangement();
        let f = a.polynomial();
        let profile = minimal_generator_degrees(&f, default_cap(f.degree()));
        println!(
            "{:<8} d={:<2} mdr={} generators={:?} free={}  ({})",
            b.name(),
            f.degree(),
            profile.mdr,
            profile.generators,
            profile.free,
            b.description()
        );
    }
}
