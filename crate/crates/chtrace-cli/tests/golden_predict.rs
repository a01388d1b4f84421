//! Golden test for the prediction tables: every simple type of rank ≤ 8
//! at ℓ ∈ {3, 5, 7}, exactly as rendered by `chtrace predict`. Regenerate
//! with CHTRACE_BLESS=1 after an intentional format change.

use std::process::Command;

fn all_cases() -> Vec<(String, u32)> {
    let mut cases = Vec::new();
    let mut push_range = |letter: &str, lo: usize, hi: usize| {
        for rank in lo..=hi {
            for ell in [3u32, 5, 7] {
                cases.push((format!("{letter}{rank}"), ell));
            }
        }
    };
    push_range("A", 1, 8);
    push_range("B", 2, 8);
    push_range("C", 2, 8);
    push_range("D", 3, 8);
    push_range("E", 6, 8);
    push_range("F", 4, 4);
    push_range("G", 2, 2);
    cases
}

fn render_all() -> String {
    let mut out = String::new();
    for (name, ell) in all_cases() {
        let cmd = Command::new(env!("CARGO_BIN_EXE_chtrace"))
            .args(["predict", "--type", &name, "--ell", &ell.to_string()])
            .output()
            .expect("binary runs");
        if cmd.status.success() {
            out.push_str(&String::from_utf8_lossy(&cmd.stdout));
        } else {
            // G2 at ℓ divisible by 3 is the only invalid combination here
            out.push_str(&format!(
                "prediction table: {name}  ell = {ell}  (invalid ell)\n"
            ));
        }
        out.push('\n');
    }
    out
}

#[test]
fn golden_prediction_tables() {
    let golden_path =
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/predict_tables.txt");
    let rendered = render_all();
    if std::env::var("CHTRACE_BLESS").is_ok() {
        std::fs::create_dir_all(golden_path.parent().unwrap()).unwrap();
        std::fs::write(&golden_path, &rendered).unwrap();
        return;
    }
    let golden = std::fs::read_to_string(&golden_path).unwrap_or_else(|e| {
        panic!(
            "missing golden file {} ({e}); run with CHTRACE_BLESS=1 to create it",
            golden_path.display()
        )
    });
    if rendered != golden {
        // locate the first differing line for a readable failure
        for (i, (a, b)) in rendered.lines().zip(golden.lines()).enumerate() {
            assert_eq!(a, b, "prediction tables diverge at line {}", i + 1);
        }
        assert_eq!(
            rendered.len(),
            golden.len(),
            "prediction tables differ in length"
        );
    }
}
