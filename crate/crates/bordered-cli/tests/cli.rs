use std::process::{Command, Output};

fn bordered(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bordered"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut v = args.to_vec();
    v.extend(["--format", "json"]);
    let o = bordered(&v);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn documented_examples() {
    let o = bordered(&[
        "surgery", "--tb", "1", "--rot", "0", "--tau", "1", "--eps", "1", "--s", "2",
    ]);
    assert_eq!(
        (o.status.code(), stdout(&o).as_str()),
        (Some(0), "nonvanishes\n")
    );
    let o = bordered(&["farey", "count", "1/-4"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "4\n"));
    let o = bordered(&["check", "az"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "ok\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(bordered(&["farey", "count"]).status.code(), Some(2));
    let o = bordered(&["check", "knot:figure8:f=0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("figure8"));
    let o = bordered(&["surgery", "--tb", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--rot"));
    // A structurally invalid file is a validation failure.
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.txt");
    std::fs::write(
        &p,
        "[typeD] bad\ngen a i0\ngen b i1\narrow a r1 b\narrow b r2 a\n",
    )
    .unwrap();
    let o = bordered(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn json_twins_carry_the_same_values() {
    assert_eq!(json(&["farey", "count", "1/-4"])["count"], 4);
    assert_eq!(json(&["check", "az"])["ok"], true);
    let p = json(&["pair", "knot:rht:f=0", "cap:i0", "--homology"]);
    assert_eq!(
        (p["homology_rank"].as_u64(), p["d_squared_ok"].as_bool()),
        (Some(3), Some(true))
    );
    let t = json(&["curve", "tau-eps", "t34"]);
    assert_eq!(
        (t["tau"].as_i64(), t["epsilon"].as_i64()),
        (Some(3), Some(1))
    );
    let r = json(&["curve", "rank", "line:2/1", "line:1/3"]);
    assert_eq!(
        (r["intersections"].as_u64(), r["pairing_rank"].as_u64()),
        (Some(5), Some(5))
    );
    assert_eq!(
        json(&["farey", "classify", "inf o -1 + -1/2"])["class"],
        "universally_tight"
    );
}

#[test]
fn contact_commands() {
    let o = bordered(&["contact", "verify", "--model", "lht", "--framings=-4..-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
    assert!(stdout(&o)
        .lines()
        .all(|l| l.matches("nonvanishes").count() == 2));
    for extra in [&[][..], &["--swapped"], &["--conjugate"]] {
        let mut args = vec!["contact", "sv", "rht", "--tb", "1"];
        args.extend_from_slice(extra);
        assert!(
            stdout(&bordered(&args)).starts_with("nonvanishes"),
            "{extra:?}"
        );
    }
    let r = json(&[
        "contact",
        "reattach",
        "knot:rht:f=0",
        "xi",
        "r3",
        "solid:n=-3:param=c",
        "x1",
    ]);
    assert_eq!(r["homologous"], true);
    assert_eq!(
        stdout(&bordered(&["contact", "slice", "r1"])),
        "basic_slice(+, G0->G1)\n"
    );
}

#[test]
fn surgery_modes_agree() {
    let o = bordered(&["surgery", "--model", "lht", "--mark", "xi", "--n", "3"]);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("nonvanishes"));
    assert!(out.contains("algebra: nonvanishes"));
    let k = json(&[
        "surgery", "--knot", "rht", "--tb", "-1", "--rot", "0", "--n", "2",
    ]);
    assert_eq!(k["algebra"], "vanishes");
    assert_eq!(k["formula"], "vanishes");
}

#[test]
fn dd_pair_and_show_round_trip() {
    let o = bordered(&["dd-pair", "solid:n=3:param=a", "--reduce"]);
    let doc = stdout(&o);
    let items = bordered::structures::parse_document(&doc).unwrap();
    match &items[..] {
        [bordered::structures::Structure::D(d)] => assert_eq!(d.len(), 4),
        other => panic!("unexpected {other:?}"),
    }
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("solid.txt");
    std::fs::write(&p, stdout(&bordered(&["show", "solid:n=-2:param=d"]))).unwrap();
    let o = bordered(&["check", p.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "ok\n"));
    let o = bordered(&["pair", p.to_str().unwrap(), "cap:i1", "--homology"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    for (curve, lifted) in [
        ("knot:t34m:f=0", false),
        ("rht", true),
        ("line:-2/3", false),
    ] {
        let out = dir.path().join("c.svg");
        let mut args = vec!["render", curve, "--out", out.to_str().unwrap()];
        if lifted {
            args.push("--lifted");
        }
        assert_eq!(bordered(&args).status.code(), Some(0), "{curve}");
        assert!(
            std::fs::read_to_string(&out).unwrap().starts_with("<svg"),
            "{curve}"
        );
    }
}
