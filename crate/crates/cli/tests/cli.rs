use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use vbent::constructions::kasami_auto_u;
use vbent::io::write_bf;
use vbent::{BooleanFunction, FieldSpec, Selector, VectorialFunction};

fn vbent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vbent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn report(out: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(format!("{out}.json")).unwrap()).unwrap()
}

fn class_line(o: &Output) -> String {
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix("class: ").map(str::to_string))
        .expect("class line")
}

#[test]
fn kasami_construct_and_verify() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "k8.vf");
    let o = vbent(&[
        "construct",
        "--family",
        "kasami",
        "--n",
        "8",
        "--tau",
        "4",
        "--poly",
        "X1*X2*X3",
        "--auto-u",
        "--out",
        &out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = report(&out);
    assert_eq!(r["family"], "kasami");
    assert_eq!(r["n"], "8");
    assert_eq!(r["measured_degree"], "3");
    assert_eq!(r["predicted_degree"], "3");
    assert_eq!(r["duals_match"], true);
    assert_eq!(r["measured_bent_components"], "15");
    assert!(r.get("timestamp").is_none());
    assert!(r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));

    let v = vbent(&["verify", &out]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(class_line(&v), "vectorial bent (8,4)");
    assert!(class_line(&v).starts_with(r["verified_class"].as_str().unwrap()));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str, stamp: bool| {
        let out = path(&dir, name);
        let mut args = vec![
            "construct",
            "--family",
            "gold",
            "--n",
            "8",
            "--seed",
            "11",
            "--t",
            "1",
            "--out",
        ];
        args.push(&out);
        if stamp {
            args.push("--stamp");
        }
        let o = vbent(&args);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        (
            fs::read(&out).unwrap(),
            fs::read(format!("{out}.json")).unwrap(),
        )
    };
    let a = run("a.vf", false);
    let b = run("b.vf", false);
    assert_eq!(a, b);
    let c = run("c.vf", true);
    assert_eq!(c.0, a.0);
    assert!(String::from_utf8(c.1)
        .unwrap()
        .contains("\"timestamp\": \"unix:"));
    // only the final files remain
    let mut names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "a.vf",
            "a.vf.json",
            "b.vf",
            "b.vf.json",
            "c.vf",
            "c.vf.json"
        ]
    );
}

#[test]
fn augmented_output_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "h.vf");
    let o = vbent(&[
        "construct",
        "--family",
        "kasami",
        "--n",
        "6",
        "--poly",
        "X1*X2",
        "--tail",
        "X1*X2*X3",
        "--out",
        &out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = report(&out);
    assert_eq!(r["t"], "1");
    assert_eq!(r["augmented"]["plateaued"], false);
    assert_eq!(r["augmented"]["tail_plateaued"], false);
    let header = fs::read_to_string(&out).unwrap();
    assert!(header.starts_with("VF n=6 m=3 t=1 field="));
    let v = vbent(&["verify", &out]);
    assert_eq!(class_line(&v), "not vectorial plateaued (6,4)");
}

#[test]
fn niho_and_field_override() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "n6.vf");
    let o = vbent(&[
        "construct",
        "--family",
        "niho",
        "--n",
        "6",
        "--r",
        "2",
        "--poly",
        "X1*X2*X3+X2",
        "--out",
        &out,
        "--jobs",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(report(&out)["r"], "2");

    let out = path(&dir, "k4.vf");
    let o = vbent(&[
        "--field-modulus",
        "19",
        "construct",
        "--family",
        "kasami",
        "--n",
        "4",
        "--poly",
        "X1*X2",
        "--out",
        &out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(fs::read_to_string(&out)
        .unwrap()
        .starts_with("VF n=4 m=2 t=0 field=19\n"));
    let v = vbent(&["verify", &out]);
    assert_eq!(class_line(&v), "vectorial bent (4,2)");
}

#[test]
fn usage_and_precondition_codes() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "x.vf");
    let missing_n = vbent(&[
        "construct",
        "--family",
        "kasami",
        "--poly",
        "X1",
        "--out",
        &out,
    ]);
    assert_eq!(missing_n.status.code(), Some(1));
    let bad_poly = vbent(&[
        "construct",
        "--family",
        "kasami",
        "--n",
        "4",
        "--poly",
        "X1**X2",
        "--out",
        &out,
    ]);
    assert_eq!(bad_poly.status.code(), Some(1));
    assert!(
        stderr(&bad_poly).contains("column"),
        "{}",
        stderr(&bad_poly)
    );
    let niho = vbent(&[
        "construct",
        "--family",
        "niho",
        "--n",
        "8",
        "--r",
        "2",
        "--poly",
        "X1",
        "--out",
        &out,
    ]);
    assert_eq!(niho.status.code(), Some(2));
    let u_condition = vbent(&[
        "construct",
        "--family",
        "kasami",
        "--n",
        "4",
        "--u",
        "1,2",
        "--poly",
        "X1*X2",
        "--out",
        &out,
    ]);
    assert_eq!(u_condition.status.code(), Some(2));
    assert!(!Path::new(&out).exists());
    assert_eq!(vbent(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_boolean_files() {
    let dir = TempDir::new().unwrap();
    let zero = path(&dir, "zero.bf");
    fs::write(&zero, "BF n=4 field=13\n0000\n").unwrap();
    let o = vbent(&["verify", &zero]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(class_line(&o), "plateaued(2^4)");
    assert!(stdout(&o).contains("|W|=16 x1"));

    let truncated = path(&dir, "t.bf");
    fs::write(&truncated, "BF n=4 field=13\n87\n").unwrap();
    let o = vbent(&["verify", &truncated]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column 3"), "{}", stderr(&o));

    assert_eq!(
        vbent(&["verify", &path(&dir, "absent.bf")]).status.code(),
        Some(1)
    );
}

#[test]
fn propp_checks_and_search() {
    let dir = TempDir::new().unwrap();
    let field = FieldSpec::standard(4).unwrap();

    let affine = path(&dir, "affine.bf");
    fs::write(&affine, write_bf(&BooleanFunction::linear(&field, 7))).unwrap();
    assert_eq!(
        vbent(&["propp", &affine, "--u", "1,2,4,8"]).status.code(),
        Some(0)
    );

    let g = VectorialFunction::power_sum(&field, 2, &[5]).unwrap();
    let dual = g.component(Selector::lambda(1)).unwrap().dual().unwrap();
    let dual_file = path(&dir, "dual.bf");
    fs::write(&dual_file, write_bf(&dual)).unwrap();
    let u = kasami_auto_u(&field, 2).unwrap().to_hex_list();
    assert_eq!(
        vbent(&["propp", &dual_file, "--u", &u]).status.code(),
        Some(0)
    );
    let search = vbent(&["propp", &dual_file, "--search", "tau=2", "--limit", "3"]);
    assert_eq!(search.status.code(), Some(0));
    assert!(stdout(&search).contains("(list truncated)"));

    let x1x2 = path(&dir, "x1x2.bf");
    fs::write(&x1x2, "BF n=2 field=7\n8\n").unwrap();
    let o = vbent(&["propp", &x1x2, "--u", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("D_0x1 D_0x2 g(0x0) = 1"));

    let bad = vbent(&["propp", &x1x2, "--search", "size=2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(vbent(&["propp", &x1x2]).status.code(), Some(1));
}
