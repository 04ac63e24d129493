use groupspec::caps::Caps;
use groupspec::verify::run_scope;

fn main() {
    let r = run_scope("lie-spectrum", &Caps::default()).unwrap();
    println!("{}", serde_json::to_string_pretty(&r.details).unwrap());
}
