//! Writes the built-in example rules as rule files into the given directory.

use nucalab::{examples, rule_to_json};

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "rules".into());
    std::fs::create_dir_all(&dir)?;
    let rules = [
        ("ex_s0", examples::ex_s0()),
        ("ex_s0_dual", examples::ex_s0_dual()),
        ("xor", examples::xor_rule()),
        ("shift", examples::shift_rule()),
        ("identity", examples::identity_rule()),
        ("gf3_diagonal", examples::gf3_diagonal()),
    ];
    for (name, s) in rules {
        std::fs::write(format!("{dir}/{name}.json"), rule_to_json(&s))?;
    }
    Ok(())
}
