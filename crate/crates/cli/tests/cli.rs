use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ldlf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldlf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn accepts_verdicts_and_codes() {
    let o = ldlf(&["accepts", "-f", "F b", "-t", "{a};{b}"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "ACCEPTED\n"));
    let o = ldlf(&["accepts", "-f", "F b", "-t", "{a};{a}"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "REJECTED\n"));
    let o = ldlf(&["accepts", "-f", "F (", "-t", "{a}"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("1:4"));
    let o = ldlf(&["accepts", "-f", "a", "-t", "{a"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn backends_agree() {
    let cases = [
        ("a U b", "{a};{a};{b}"),
        ("G (a -> WX b)", "{a};{b}"),
        ("<(a ; b)*> tt", "{a};{b};{a}"),
        ("[tt*] (b -> Y a)", "{a};{b};{b}"),
        ("a S b", "eps"),
    ];
    for (f, t) in cases {
        let expected = code(&ldlf(&["accepts", "-f", f, "-t", t]));
        let mut backends = vec!["2afa"];
        if !f.contains('Y') && !f.contains('S') {
            backends.extend(["afa", "nfa", "dfa"]);
        }
        for b in backends {
            assert_eq!(
                code(&ldlf(&["accepts", "-f", f, "-t", t, "--backend", b])),
                expected,
                "{f} on {t} via {b}"
            );
        }
    }
    // past operators are not available to the one-way backends
    assert_eq!(
        code(&ldlf(&[
            "accepts",
            "-f",
            "Y a",
            "-t",
            "{a}",
            "--backend",
            "afa"
        ])),
        2
    );
}

#[test]
fn metric_formulas_need_times() {
    let o = ldlf(&["accepts", "-f", "X[1,5) b", "-t", "{a}@0;{b}@3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        code(&ldlf(&["accepts", "-f", "X[1,5) b", "-t", "{a};{b}"])),
        2
    );
}

#[test]
fn parse_prints_canonical_form() {
    let o = ldlf(&["parse", "-f", "(a & b) | X (c)"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "a & b | X c\n"));
    let o = ldlf(&["parse", "-f", "X[3,1) a"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn inline_and_file_sources_conflict() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "f.ltl", "F a % comment\n");
    let o = ldlf(&["parse", "--formula-file", &path]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "F a\n"));
    assert_eq!(
        code(&ldlf(&["parse", "-f", "a", "--formula-file", &path])),
        2
    );
    assert_eq!(code(&ldlf(&["parse"])), 2);
}

#[test]
fn equivalence() {
    let o = ldlf(&["equiv", "-f", "X a", "-g", "WX a"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("counterexample: eps"));
    let o = ldlf(&["equiv", "-f", "a U b", "-g", "<(a? ; tt)*> b"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "EQUIVALENT\n"));
}

#[test]
fn metric_commands() {
    let dir = tempfile::tempdir().unwrap();
    let school = write(dir.path(), "school.mlp", "X[20,40) school :- drive.\n");
    let o = ldlf(&[
        "metric",
        "check",
        "-p",
        &school,
        "-t",
        "{drive}@0;{school}@45",
    ]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "rule 0 at step 0\n"));
    let o = ldlf(&[
        "metric",
        "check",
        "-p",
        &school,
        "-t",
        "{drive}@0;{school}@25",
    ]);
    assert_eq!(code(&o), 0);
    let o = ldlf(&["metric", "times", "-p", &school, "-t", "{drive};{school}"]);
    assert_eq!(
        (code(&o), stdout(&o).as_str()),
        (0, "{drive}@0;{school}@20\n")
    );
    let o = ldlf(&[
        "metric",
        "times",
        "-p",
        &school,
        "-t",
        "{drive};{school}",
        "--strict",
    ]);
    assert_eq!(stdout(&o), "{drive}@0;{school}@20\n");
    let o = ldlf(&["metric", "times", "-p", &school, "-t", "{drive};{}"]);
    assert_eq!(
        (code(&o), stdout(&o).as_str()),
        (1, "VIOLATED\nrule 0 at step 0\n")
    );
    let o = ldlf(&[
        "metric",
        "times",
        "--program-text",
        "X[5,10) b :- a. X[20,30) b :- a.",
        "-t",
        "{a};{b}",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("INFEASIBLE\n"));
    let o = ldlf(&["metric", "enumerate", "-p", &school, "--horizon", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "{drive}@0;{school}@20"));
    let o = ldlf(&[
        "metric",
        "check",
        "--program-text",
        "school :- X[1,2) drive.",
        "-t",
        "{}@0",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn filter_partitions_its_input() {
    let dir = tempfile::tempdir().unwrap();
    let lines = ["{a};{b}", "{b}", "eps", "{a};{a};{a}", "{c};{a,b}"];
    let traces = write(dir.path(), "traces.txt", &(lines.join("\n") + "\n\n"));
    let kept = ldlf(&["filter", "-f", "F b", "--traces", &traces]);
    let dropped = ldlf(&["filter", "-f", "F b", "--traces", &traces, "--negate"]);
    assert_eq!((code(&kept), code(&dropped)), (0, 0));
    assert_eq!(stderr(&kept), "kept 3 of 5\n");
    assert_eq!(stderr(&dropped), "kept 2 of 5\n");
    let mut all: Vec<String> = stdout(&kept)
        .lines()
        .chain(stdout(&dropped).lines())
        .map(String::from)
        .collect();
    all.sort();
    let mut expected: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
    expected.sort();
    assert_eq!(all, expected);
    let oracle = ldlf(&[
        "filter",
        "-f",
        "F b",
        "--traces",
        &traces,
        "--backend",
        "oracle",
    ]);
    assert_eq!(stdout(&oracle), stdout(&kept));

    let bad = write(dir.path(), "bad.txt", "{a}\n{a\n");
    let o = ldlf(&["filter", "-f", "a", "--traces", &bad]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bad.txt:2"));
}

#[test]
fn enumerate_lists_accepted_traces() {
    let o = ldlf(&["enumerate", "-f", "a", "--ap", "a", "--max-len", "2"]);
    assert_eq!(
        (code(&o), stdout(&o).as_str()),
        (0, "{a}\n{a};{}\n{a};{a}\n")
    );
    let o = ldlf(&[
        "enumerate",
        "-f",
        "WY ff & b",
        "--ap",
        "a",
        "--max-len",
        "1",
    ]);
    assert_eq!(stdout(&o), "{b}\n{a,b}\n");
    let o = ldlf(&[
        "enumerate",
        "-f",
        "tt",
        "--ap",
        "a,b,c,d,e,f,g,h,i",
        "--max-len",
        "1",
    ]);
    assert_eq!(code(&o), 3);
}

#[test]
fn compile_reports_sizes_and_budget() {
    let o = ldlf(&["compile", "-f", "F a", "--to", "min-dfa"]);
    assert_eq!(
        (code(&o), stdout(&o).as_str()),
        (0, "alphabet: {a}\nstates: 2\ntransitions: 4\n")
    );
    for to in ["afa", "nfa", "dfa", "2afa"] {
        assert_eq!(
            code(&ldlf(&["compile", "-f", "a U X b", "--to", to])),
            0,
            "{to}"
        );
    }
    let o = ldlf(&[
        "compile",
        "-f",
        "F a & F b & F c",
        "--to",
        "dfa",
        "--budget",
        "3",
    ]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&ldlf(&["compile", "-f", "Y a", "--to", "dfa"])), 2);
}

#[test]
fn dot_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for to in ["afa", "nfa", "dfa", "min-dfa", "2afa"] {
        let a = dir.path().join(format!("{to}-1.dot"));
        let b = dir.path().join(format!("{to}-2.dot"));
        for p in [&a, &b] {
            let o = ldlf(&[
                "compile",
                "-f",
                "<(a ; b?)*> (b & WY a)",
                "--to",
                to,
                "--dot",
                p.to_str().unwrap(),
            ]);
            if to == "2afa" {
                assert_eq!(code(&o), 0);
            } else {
                // the one-way backends refuse past operators
                assert_eq!(code(&o), 2);
                let o = ldlf(&[
                    "compile",
                    "-f",
                    "<(a ; b?)*> b",
                    "--to",
                    to,
                    "--dot",
                    p.to_str().unwrap(),
                ]);
                assert_eq!(code(&o), 0);
            }
        }
        let (x, y) = (
            fs::read_to_string(&a).unwrap(),
            fs::read_to_string(&b).unwrap(),
        );
        assert!(x.starts_with("digraph"));
        assert_eq!(x, y, "{to}");
    }
    let run = dir.path().join("run.dot");
    let o = ldlf(&[
        "accepts",
        "-f",
        "F (b & Y a)",
        "-t",
        "{a};{b}",
        "--backend",
        "2afa",
        "--run-dot",
        run.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&run).unwrap();
    assert!(text.starts_with("digraph run"));
    // the past step reads position 0 from position 1
    assert!(text.contains("a @ 0") && text.contains("[label=\"L\"]"));
}

#[test]
fn help_exits_zero() {
    let o = ldlf(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("metric"));
    assert_eq!(code(&ldlf(&["frobnicate"])), 2);
}
