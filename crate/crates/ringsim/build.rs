use std::path::Path;

// netlib-src emits `-lcblas`, which Debian does not ship as a standalone
// library (the CBLAS interface lives inside libopenblas). Provide a
// libcblas.so symlink in OUT_DIR when the system lacks one.
fn main() {
    let lib_dirs = ["/usr/lib/x86_64-linux-gnu", "/usr/lib", "/usr/local/lib"];
    if lib_dirs.iter().any(|d| Path::new(d).join("libcblas.so").exists()) {
        return;
    }
    let provider = lib_dirs
        .iter()
        .map(|d| Path::new(d).join("libopenblas.so"))
        .find(|p| p.exists());
    if let Some(provider) = provider {
        let out = std::env::var("OUT_DIR").unwrap();
        let link = Path::new(&out).join("libcblas.so");
        if !link.exists() {
            std::os::unix::fs::symlink(&provider, &link).unwrap();
        }
        println!("cargo:rustc-link-search=native={out}");
    }
}
