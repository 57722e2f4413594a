use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const NAGATA: &str = "(X - 2*Y*(z*X + Y^2) - z*(z*X + Y^2)^2, Y + z*(z*X + Y^2))";

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_planetame"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: Option<&str>) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all, stdin);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn nagata_not_tame_over_qz() {
    let (code, v) = json(&["is-tame", "--ring", "Qz"], Some(NAGATA));
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "not_tame");
    assert_eq!(v["obstruction"]["kind"], "CoefficientNotInRing");
    assert_eq!(v["obstruction"]["c"], "-1/z");
    assert_eq!(v["checks"]["obstruction"], true);
}

#[test]
fn nagata_decomposes_over_fraction_field() {
    let (code, v) = json(&["decompose", "--ring", "Qz_frac", "--map", NAGATA], None);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "tame");
    assert!(v["factors"].as_array().unwrap().len() >= 3);
    assert_eq!(v["checks"]["recompose"], true);
}

#[test]
fn nagata_minimal_overring() {
    let (code, v) = json(&["minimal-overring", "--ring", "Qz", "--map", NAGATA], None);
    assert_eq!(code, 0);
    assert_eq!(v["r"], "z");
    assert!(v["checks"].as_object().unwrap().values().all(|c| c == true));
}

#[test]
fn nagata_locally_tame_away_from_z() {
    let (_, v) = json(
        &[
            "is-locally-tame",
            "--ring",
            "Qz",
            "--prime",
            "z + 1",
            "--map",
            NAGATA,
        ],
        None,
    );
    assert_eq!(v["verdict"], "tame");
    let (_, v) = json(
        &[
            "is-locally-tame",
            "--ring",
            "Qz",
            "--prime",
            "z",
            "--map",
            NAGATA,
        ],
        None,
    );
    assert_eq!(v["verdict"], "not_tame");
}

#[test]
fn exit_codes() {
    let parse = json(&["parse", "--ring", "Z", "--map", "(X + , Y)"], None);
    assert_eq!(parse.0, 1);
    assert_eq!(parse.1["error"]["kind"], "parse");
    assert_eq!(parse.1["error"]["position"], 5);

    assert_eq!(
        run(&["is-tame", "--map", "(X, Y)"], None).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["is-tame", "--ring", "Fp:91", "--map", "(X, Y)"], None)
            .status
            .code(),
        Some(2)
    );
    let not_prime = [
        "is-locally-tame",
        "--ring",
        "Zr5",
        "--prime",
        "2",
        "--map",
        "(X, Y)",
    ];
    assert_eq!(run(&not_prime, None).status.code(), Some(2));
    assert_eq!(
        run(
            &["minimal-overring", "--ring", "Zr5", "--map", "(X, Y)"],
            None
        )
        .status
        .code(),
        Some(2)
    );

    let (code, v) = json(&["is-tame", "--ring", "Q", "--map", "(X^2, Y)"], None);
    assert_eq!(code, 3);
    assert_eq!(v["verdict"], "not_automorphism");
    assert_eq!(
        run(&["inverse", "--ring", "Z", "--map", "(X + Y^2, X)"], None)
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn identity_is_tame_everywhere() {
    for ring in [
        "Q", "Fp:7", "Z", "Z_loc:6", "Qz", "Qz_loc:z", "Qz_frac", "Qt", "Qzw", "Qzw_frac", "Zr5",
        "cusp",
    ] {
        let (code, v) = json(&["is-tame", "--ring", ring, "--map", "(X, Y)"], None);
        assert_eq!(code, 0, "{ring}");
        assert_eq!(v["verdict"], "tame", "{ring}");
    }
}

#[test]
fn gallery_output_reparses() {
    let cases: [&[&str]; 4] = [
        &["gallery", "nagata", "--ring", "Qz"],
        &[
            "gallery", "can-ex", "--ring", "Zr5", "--z", "2", "--w", "1 + r5", "--q", "0, 0, 1",
        ],
        &[
            "gallery", "can-ex", "--ring", "Z", "--z", "4", "--w", "6", "--q", "1, 0, 3",
        ],
        &["gallery", "cuspidal"],
    ];
    for args in cases {
        let out = run(args, None);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let map = text.lines().next().unwrap();
        let ring = args
            .iter()
            .position(|a| *a == "--ring")
            .map_or("cusp", |i| args[i + 1]);
        let (code, v) = json(&["parse", "--ring", ring, "--map", map], None);
        assert_eq!(code, 0);
        assert_eq!(v["maps"][0], map);
    }
}

#[test]
fn human_map_output_feeds_back() {
    let out = run(&["inverse", "--ring", "Qz"], Some(NAGATA));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let (code, v) = json(
        &[
            "compose",
            "--ring",
            "Qz",
            "--map",
            NAGATA,
            "--map",
            text.lines().next().unwrap(),
        ],
        None,
    );
    assert_eq!(code, 0);
    assert_eq!(v["map"], "(X, Y)");
}

#[test]
fn cusp_rejects_bare_t() {
    let (code, v) = json(&["parse", "--ring", "cusp", "--map", "(X + t*Y, Y)"], None);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["position"], 5);
    assert!(v["error"]["message"].as_str().unwrap().contains("t^2"));
}

#[test]
fn zr5_parse() {
    let (code, v) = json(&["parse", "--ring", "Zr5", "--map", "(X + r5*Y, Y)"], None);
    assert_eq!(code, 0);
    assert_eq!(v["maps"][0], "(X + r5*Y, Y)");
}

#[test]
fn comments_and_separators() {
    let input = "# two maps\n(X + Y, Y);\n(X, Y + 2*X) # shear\n";
    let (code, v) = json(&["parse", "--ring", "Z"], Some(input));
    assert_eq!(code, 0);
    assert_eq!(v["maps"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_is_deterministic() {
    let a = json(&["verify", "--seed", "11", "--count", "3"], None);
    let b = json(&["verify", "--seed", "11", "--count", "3"], None);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    assert!(a.1["batteries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x["failed"] == 0));
    assert_eq!(run(&["verify", "--ring", "Z"], None).status.code(), Some(2));
}
