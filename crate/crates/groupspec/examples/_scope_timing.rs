use groupspec::caps::Caps;
use groupspec::verify::{run_scope, SCOPES};
use std::time::Instant;

fn main() {
    let caps = Caps::default();
    for name in SCOPES.iter().filter(|&&s| s != "determinism") {
        let t = Instant::now();
        match run_scope(name, &caps) {
            Ok(r) => println!("{name}: passed={} in {:?}", r.passed, t.elapsed()),
            Err(e) => println!("{name}: ERROR {e} in {:?}", t.elapsed()),
        }
    }
}
