use std::path::PathBuf;

use serde_json::Value;
use simplab::cli::run;
use simplab::formats;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn simplab(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("simplab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = simplab(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn triangle_edge_spectrum_csv() {
    let (code, out, _) = simplab(&["spectra", "--input", &fixture("tri.cplx"), "--level", "1", "--csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "k,variant,index,eigenvalue\n1,up,0,0\n1,up,1,0\n1,up,2,3\n");
}

#[test]
fn cycle_cheeger_constants() {
    let r = json(&["cheeger", "--input", &fixture("c3.cplx"), "--level", "0", "--which", "all"]);
    for h in ["h1", "h2", "h4"] {
        assert_eq!(r[h]["value"]["exact"], "1");
    }
    assert!((r["h3"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(r["agree"], true);
    assert_eq!(r["estimate"]["holds"], true);
}

#[test]
fn floer_fixtures() {
    for f in ["fig1.floer", "fig2.floer", "fig3.floer"] {
        let r = json(&["floer", "--input", &fixture(f), "--homology"]);
        assert_eq!(r["homology"], serde_json::json!([1, 0, 1]), "{f}");
    }
    let r = json(&["floer", "--input", &fixture("fig2.floer"), "--franks", "O", "--upper", "t1", "--lower", "s1"]);
    let replaced = formats::parse_floer(r["franks"]["complex"].as_str().unwrap()).unwrap();
    let fig3 = formats::parse_floer(&std::fs::read_to_string(fixture("fig3.floer")).unwrap()).unwrap();
    assert_eq!(replaced, fig3);
    let r = json(&["floer", "--input", &fixture("fig1.floer"), "--cancel", "s1", "q1"]);
    assert_eq!(r["cancel"]["invariant"], true);
}

#[test]
fn morse_fixture() {
    let r = json(&["morse", "--input", &fixture("fig20.morse")]);
    assert_eq!(r["critical_counts"], serde_json::json!([1, 1]));
    assert_eq!(r["boundary"][0]["matrix"], serde_json::json!([[0]]));
    assert_eq!(r["homology"], serde_json::json!([1, 1]));
    assert_eq!(r["inequalities"]["holds"], true);
    let r = json(&["plmorse", "--input", &fixture("fig20.morse"), "--check"]);
    assert_eq!(r["comparison"]["agree"], true);
}

#[test]
fn exit_codes() {
    let (code, _, err) = simplab(&["cheeger", "--input", &fixture("boundary-tetra.cplx"), "--level", "1", "--budget-simplices", "4"]);
    assert_eq!(code, 3);
    let diag: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(diag["error"], "budget");
    assert_eq!(simplab(&["spectra", "--input", &fixture("tri.cplx"), "--frobnicate"]).0, 2);
    assert_eq!(simplab(&["cheeger", "--input", &fixture("c3.cplx"), "--level", "0", "--budget-M", "0"]).0, 2);
    assert_eq!(simplab(&["spectra", "--input", "/nonexistent.cplx"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.morse");
    std::fs::write(&bad, "0 = 1\n1 = 1\n0 1 = 0\n").unwrap();
    let (code, _, err) = simplab(&["morse", "--input", bad.to_str().unwrap(), "--check"]);
    assert_eq!(code, 2);
    assert!(err.contains("\"morse\""));
    assert_eq!(simplab(&["--version"]).0, 0);
}

#[test]
fn outputs_and_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let plot = dir.path().join("plot.csv");
    let args = ["sample-spec", "--manifold", "circle", "--n", "500", "--seed", "7"];
    let (code, _, _) = simplab(&[&args[..], &["--out", out.to_str().unwrap(), "--plot", plot.to_str().unwrap()]].concat());
    assert_eq!(code, 0);
    let first = std::fs::read(&out).unwrap();
    let r: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(r["cluster_sizes"][0], 2);
    let csv = std::fs::read_to_string(&plot).unwrap();
    assert!(csv.starts_with("series,x,y\nn=500,1,"));
    simplab(&[&args[..], &["--out", out.to_str().unwrap()]].concat());
    assert_eq!(std::fs::read(&out).unwrap(), first);

    let (_, spectrum, _) = simplab(&["spectra", "--input", &fixture("tri.cplx"), "--plot", plot.to_str().unwrap()]);
    assert!(spectrum.contains("\"spectra\""));
    assert!(std::fs::read_to_string(&plot).unwrap().contains("k=1,2,3"));
    let (code, _, _) = simplab(&["witten", "--input", &fixture("fig20.morse"), "--level", "0", "--plot", plot.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(std::fs::read_to_string(&plot).unwrap().contains("k=0,8,1"));
}

#[test]
fn fixtures_round_trip() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures"].iter().collect();
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        match path.extension().and_then(|e| e.to_str()) {
            Some("cplx") => {
                let c = formats::parse_complex(&text).unwrap();
                assert_eq!(formats::parse_complex(&formats::write_complex(&c)).unwrap(), c);
            }
            Some("floer") => {
                let c = formats::parse_floer(&text).unwrap();
                assert_eq!(formats::parse_floer(&formats::write_floer(&c)).unwrap(), c);
            }
            Some("morse") => {
                let c = formats::parse_morse(&text).unwrap();
                assert_eq!(formats::parse_morse(&formats::write_morse(&c)).unwrap(), c);
            }
            Some("sgraph") => {
                let g = formats::parse_signed_graph(&text).unwrap();
                assert_eq!(formats::parse_signed_graph(&formats::write_signed_graph(&g)).unwrap(), g);
            }
            Some("setfn") => {
                let f = formats::parse_set_function(&text).unwrap();
                assert_eq!(formats::parse_set_function(&formats::write_set_function(&f)).unwrap(), f);
            }
            _ => continue,
        }
        seen += 1;
    }
    assert!(seen >= 6);
}
