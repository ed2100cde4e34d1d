//! Compiles a small C client against the generated header and the shared
//! library.

use std::path::{Path, PathBuf};
use std::process::Command;

const CLIENT: &str = r#"
#include <stdio.h>
#include <string.h>
#include "ebfs.h"

int main(void) {
    EbfsGraph *g = NULL;
    if (ebfs_graph_parse("4 5\n0 1 1\n1 2 1\n0 2 2\n0 3 3\n2 3 1\n", &g) != EBFS_STATUS_OK) return 10;
    EbfsOptions options = ebfs_options_default();
    options.mode = EBFS_MODE_GREEDY;
    EbfsResult *r = NULL;
    if (ebfs_solve_graph(g, EBFS_PROBLEM_MST_PRIM, 0, 0, &options, &r) != EBFS_STATUS_OK) return 11;
    uint64_t cost = 0;
    if (ebfs_result_cost(r, &cost) != EBFS_STATUS_OK || cost != 3) return 12;
    size_t edges[8];
    size_t len = 0;
    if (ebfs_result_optimum(r, 0, edges, 8, &len) != EBFS_STATUS_OK || len != 3) return 13;
    EbfsStats stats;
    ebfs_result_stats(r, &stats);
    if (stats.max_undominated_width != 1) return 14;
    char *json = ebfs_result_json(r);
    printf("%s\n", json);
    ebfs_string_free(json);
    ebfs_result_free(r);

    EbfsResult *bad = NULL;
    if (ebfs_solve_graph(g, EBFS_PROBLEM_SSSP, 9, 0, NULL, &bad) != EBFS_STATUS_VALIDATION) return 15;
    if (strstr(ebfs_last_error(), "node 9") == NULL) return 16;
    ebfs_graph_free(g);
    return 0;
}
"#;

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

/// The directory holding `libebfs_ffi.so`: the parent of `deps/`.
fn lib_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_is_valid_c() {
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(crate_dir().join("include/ebfs.h"))
        .status()
        .unwrap();
    assert!(status.success());
}

#[test]
fn c_client_links_and_runs() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let bin = dir.path().join("client");
    std::fs::write(&src, CLIENT).unwrap();
    let libs = lib_dir();
    assert!(libs.join("libebfs_ffi.so").exists(), "missing shared library in {}", libs.display());
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror"])
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg("-L")
        .arg(&libs)
        .arg(format!("-Wl,-rpath,{}", libs.display()))
        .args(["-lebfs_ffi", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["optimal_cost"], 3);
    assert_eq!(json["optima"][0].as_array().unwrap().len(), 3);
}
