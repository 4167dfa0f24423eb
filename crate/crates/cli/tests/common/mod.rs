#![allow(dead_code)]

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn arrlog(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("arrlog").chain(args.iter().copied());
    let code = arrlog_cli::run(argv, &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

pub fn json(args: &[&str]) -> serde_json::Value {
    let r = arrlog(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}
