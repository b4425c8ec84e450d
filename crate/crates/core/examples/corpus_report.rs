//! Write a few modules as JSON and summarize the directory, as `fisheaf report` does.

use std::fs;

use fisheaf::cli::corpus_report;
use fisheaf::modcore::{free_module, simple_at};
use fisheaf::nakayama::simple_saturated;
use fisheaf::skelcat::CatKind;

fn main() -> fisheaf::Result<()> {
    let dir = std::env::temp_dir().join(format!("fisheaf-corpus-{}", std::process::id()));
    fs::create_dir_all(&dir).map_err(|e| fisheaf::Error::Io(e.to_string()))?;
    let modules = [
        ("p1.json", free_module(CatKind::Fi, 1, 5)?),
        ("s2.json", simple_at(&"2".parse()?, 5)?),
        ("l1.json", simple_saturated(&"1".parse()?, 5)?),
        ("oi_p1.json", free_module(CatKind::Oi, 1, 5)?),
    ];
    for (name, v) in &modules {
        fs::write(dir.join(name), v.to_json()).map_err(|e| fisheaf::Error::Io(e.to_string()))?;
    }
    fs::write(dir.join("broken.json"), "{").map_err(|e| fisheaf::Error::Io(e.to_string()))?;

    let report = corpus_report(&dir)?;
    print!("{}", report.to_markdown());
    let _ = fs::remove_dir_all(&dir);
    Ok(())
}
