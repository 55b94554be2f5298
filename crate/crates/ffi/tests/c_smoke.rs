//! Compile and run a small C program against include/satcube.h and the
//! staticlib, exercising the ABI end to end from the C side.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <assert.h>
#include <stdio.h>
#include <string.h>
#include "satcube.h"

int main(void) {
    assert(strlen(satcube_version()) > 0);

    /* parse, enumerate, count */
    satcube_formula *f = NULL;
    satcube_status st = satcube_formula_parse_dimacs("p cnf 3 1\n1 2 3 0\n", &f);
    assert(st == SATCUBE_OK);
    assert(satcube_formula_n_vars(f) == 3);
    assert(satcube_formula_n_clauses(f) == 1);

    satcube_solution_set *s = NULL;
    assert(satcube_enumerate(f, 22, &s) == SATCUBE_OK);
    assert(satcube_solution_set_count(s) == 7);
    assert(satcube_solution_set_contains(s, 0) == 0);
    assert(satcube_solution_set_contains(s, 7) == 1);
    satcube_solution_set_free(s);
    satcube_formula_free(f);

    /* error path populates a message */
    f = NULL;
    st = satcube_formula_parse_dimacs("p cnf 3 1\n1 1 2 0\n", &f);
    assert(st == SATCUBE_ERR_PARSE);
    assert(f == NULL);
    assert(satcube_last_error_message() != NULL);

    /* unsat core solves to UNSAT */
    assert(satcube_make_unsat_core(6, 2, 4, 6, &f) == SATCUBE_OK);
    satcube_solve_status solve_st;
    uint64_t model = 0;
    assert(satcube_solve(f, 0, 0, 0, 0, &solve_st, &model) == SATCUBE_OK);
    assert(solve_st == SATCUBE_SOLVE_UNSAT);
    satcube_formula_free(f);

    /* maximal instance solves to its target */
    assert(satcube_make_max_sat(5, 19, &f) == SATCUBE_OK);
    assert(satcube_solve(f, 0, 0, 0, 0, &solve_st, &model) == SATCUBE_OK);
    assert(solve_st == SATCUBE_SOLVE_SAT);
    assert(model == 19);
    assert(satcube_verify_model(f, 19) == 1);
    satcube_formula_free(f);

    /* strings */
    char *json = NULL;
    assert(satcube_bounds_json(10, &json) == SATCUBE_OK);
    assert(strstr(json, "\"960\"") != NULL);
    satcube_string_free(json);

    /* analytics */
    assert(satcube_expected_solutions(12, 0) == 4096.0);
    assert(satcube_expected_search_effort(0) == 1.0);

    printf("c smoke ok\n");
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    assert!(
        include_dir.join("satcube.h").exists(),
        "generated header missing"
    );

    // default workspace layout: target/debug next to the workspace root
    let target_dir = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    let profile_dir = target_dir.join(if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    });
    let staticlib = profile_dir.join("libsatcube_ffi.a");
    assert!(
        staticlib.exists(),
        "staticlib not found at {staticlib:?}; build the ffi crate first"
    );

    let work = std::env::temp_dir().join(format!("satcube-c-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("smoke.c");
    let bin = work.join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let compile = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include_dir)
        .arg(staticlib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .output()
        .expect("cc not available");
    assert!(
        compile.status.success(),
        "compile failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&bin).output().unwrap();
    assert!(
        run.status.success(),
        "smoke binary failed:\n{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "c smoke ok\n");
}
