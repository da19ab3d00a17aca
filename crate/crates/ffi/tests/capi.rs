use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use mccc_ffi::*;

fn dataset(w: (f64, f64)) -> (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>) {
    let x_re: Vec<f64> = (0..40).map(|k| ((k as f64) * 0.37).sin() + 0.1).collect();
    let x_im: Vec<f64> = (0..40).map(|k| ((k as f64) * 0.91).cos()).collect();
    let d_re = x_re.iter().zip(&x_im).map(|(a, b)| w.0 * a - w.1 * b).collect();
    let d_im = x_re.iter().zip(&x_im).map(|(a, b)| w.0 * b + w.1 * a).collect();
    (x_re, x_im, d_re, d_im)
}

#[test]
fn correntropy_matches_closed_form_and_integral() {
    let (re, im) = ([0.3, -0.2], [0.1, 0.4]);
    let zeros = [0.0; 2];
    let mut closed = 0.0;
    let mut integral = 0.0;
    let s = unsafe { mccc_complex_correntropy(re.as_ptr(), im.as_ptr(), zeros.as_ptr(), zeros.as_ptr(), 2, 0.5, &mut closed) };
    assert_eq!(s, McccStatus::Ok);
    let s = unsafe {
        mccc_correntropy_integral(re.as_ptr(), im.as_ptr(), zeros.as_ptr(), zeros.as_ptr(), 2, 0.5, &mut integral)
    };
    assert_eq!(s, McccStatus::Ok);
    assert!((closed - integral).abs() <= 1e-9 * closed);

    let mut same = 0.0;
    let s = unsafe { mccc_complex_correntropy(re.as_ptr(), im.as_ptr(), re.as_ptr(), im.as_ptr(), 2, 1.0, &mut same) };
    assert_eq!(s, McccStatus::Ok);
    assert!((same - 1.0 / (4.0 * std::f64::consts::PI)).abs() < 1e-15);
}

#[test]
fn batch_and_recursive_recover_noiseless_weight() {
    let (x_re, x_im, d_re, d_im) = dataset((0.8, -0.4));
    let (mut re, mut im, mut iters, mut conv) = (0.0, 0.0, 0usize, false);
    let s = unsafe {
        mccc_batch_fixed_point(
            x_re.as_ptr(), x_im.as_ptr(), d_re.as_ptr(), d_im.as_ptr(), x_re.len(),
            0.5, 100, 1e-12, 0.0, 0.0, &mut re, &mut im, &mut iters, &mut conv,
        )
    };
    assert_eq!(s, McccStatus::Ok);
    assert!(conv && iters <= 100);
    assert!((re - 0.8).abs() < 1e-12 && (im + 0.4).abs() < 1e-12);

    let mut filter = ptr::null_mut();
    assert_eq!(mccc_recursive_new(0.5, 0.0, 0.0, 1e-9, &mut filter), McccStatus::Ok);
    assert!(!filter.is_null());
    for k in 0..x_re.len() {
        assert_eq!(unsafe { mccc_recursive_update(filter, x_re[k], x_im[k], d_re[k], d_im[k]) }, McccStatus::Ok);
    }
    let mut seen = 0u64;
    unsafe {
        assert_eq!(mccc_recursive_weight(filter, &mut re, &mut im), McccStatus::Ok);
        assert_eq!(mccc_recursive_samples_seen(filter, &mut seen), McccStatus::Ok);
        mccc_recursive_free(filter);
    }
    assert_eq!(seen, 40);
    assert!((re - 0.8).abs() < 1e-6 && (im + 0.4).abs() < 1e-6);

    let mut wsnr = 0.0;
    assert_eq!(mccc_wsnr_db(0.8, -0.4, re, im, 300.0, &mut wsnr), McccStatus::Ok);
    assert!(wsnr > 100.0);
}

#[test]
fn rls_handle_tracks_least_squares() {
    let (x_re, x_im, d_re, d_im) = dataset((-0.3, 1.2));
    let mut filter = ptr::null_mut();
    assert_eq!(mccc_rls_new(0.0, 0.0, 1e8, 1.0, &mut filter), McccStatus::Ok);
    for k in 0..x_re.len() {
        assert_eq!(unsafe { mccc_rls_update(filter, x_re[k], x_im[k], d_re[k], d_im[k]) }, McccStatus::Ok);
    }
    let (mut re, mut im, mut ls_re, mut ls_im) = (0.0, 0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(mccc_rls_weight(filter, &mut re, &mut im), McccStatus::Ok);
        mccc_rls_free(filter);
        let s = mccc_least_squares_weight(
            x_re.as_ptr(), x_im.as_ptr(), d_re.as_ptr(), d_im.as_ptr(), x_re.len(), &mut ls_re, &mut ls_im,
        );
        assert_eq!(s, McccStatus::Ok);
    }
    assert!((re - ls_re).abs() < 1e-6 && (im - ls_im).abs() < 1e-6);
    assert!((ls_re + 0.3).abs() < 1e-12 && (ls_im - 1.2).abs() < 1e-12);
}

#[test]
fn errors_map_to_status_codes() {
    let mut v = 0.0;
    assert_eq!(mccc_gaussian_kernel(0.0, 0.0, &mut v), McccStatus::InvalidArgument);
    assert_eq!(mccc_gaussian_kernel(0.0, 1.0, ptr::null_mut()), McccStatus::NullPointer);
    assert_eq!(mccc_wsnr_db(f64::NAN, 0.0, 0.0, 0.0, 300.0, &mut v), McccStatus::InvalidArgument);

    let zeros = [0.0; 3];
    let ones = [1.0; 3];
    let (mut re, mut im) = (0.0, 0.0);
    unsafe {
        let s = mccc_complex_correntropy(ptr::null(), zeros.as_ptr(), zeros.as_ptr(), zeros.as_ptr(), 3, 1.0, &mut v);
        assert_eq!(s, McccStatus::NullPointer);
        let s = mccc_complex_correntropy(zeros.as_ptr(), zeros.as_ptr(), zeros.as_ptr(), zeros.as_ptr(), 0, 1.0, &mut v);
        assert_eq!(s, McccStatus::InvalidArgument);
        let s = mccc_least_squares_weight(zeros.as_ptr(), zeros.as_ptr(), ones.as_ptr(), ones.as_ptr(), 3, &mut re, &mut im);
        assert_eq!(s, McccStatus::Unidentifiable);
    }

    // A kernel far narrower than every residual underflows the weighting factors.
    let (mut it, mut conv) = (0usize, false);
    let big = [1e3; 3];
    let s = unsafe {
        mccc_batch_fixed_point(
            ones.as_ptr(), zeros.as_ptr(), big.as_ptr(), zeros.as_ptr(), 3,
            1e-3, 10, 1e-12, 0.0, 0.0, &mut re, &mut im, &mut it, &mut conv,
        )
    };
    assert_eq!(s, McccStatus::KernelCollapse);

    let mut filter = ptr::null_mut();
    assert_eq!(mccc_rls_new(0.0, 0.0, 1.0, 0.0, &mut filter), McccStatus::InvalidArgument);
    assert!(filter.is_null());
    let mut recursive = ptr::null_mut();
    assert_eq!(mccc_recursive_new(0.5, 0.0, 0.0, -1.0, &mut recursive), McccStatus::InvalidArgument);
    assert!(recursive.is_null());
    unsafe {
        assert_eq!(mccc_rls_update(ptr::null_mut(), 1.0, 0.0, 1.0, 0.0), McccStatus::NullPointer);
        mccc_rls_free(ptr::null_mut());
        mccc_recursive_free(ptr::null_mut());
    }
}

#[test]
fn status_messages_are_nul_terminated() {
    for s in [
        McccStatus::Ok,
        McccStatus::NullPointer,
        McccStatus::InvalidArgument,
        McccStatus::LengthMismatch,
        McccStatus::Unidentifiable,
        McccStatus::KernelCollapse,
        McccStatus::QuadratureFailure,
        McccStatus::Panic,
    ] {
        let text = unsafe { CStr::from_ptr(mccc_status_message(s)) }.to_str().unwrap();
        assert!(!text.is_empty());
    }
}

#[test]
fn header_declares_every_export_and_compiles_as_c() {
    let header_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/mccc.h");
    let header = std::fs::read_to_string(&header_path).unwrap();
    for name in [
        "mccc_status_message", "mccc_gaussian_kernel", "mccc_complex_correntropy", "mccc_correntropy_integral",
        "mccc_cost_function", "mccc_batch_fixed_point", "mccc_least_squares_weight", "mccc_wsnr_db",
        "mccc_recursive_new", "mccc_recursive_update", "mccc_recursive_weight", "mccc_recursive_samples_seen",
        "mccc_recursive_free", "mccc_rls_new", "mccc_rls_update", "mccc_rls_weight", "mccc_rls_free",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }

    let Ok(probe) = Command::new("cc").arg("--version").output() else {
        eprintln!("cc not found, skipping header compile check");
        return;
    };
    if !probe.status.success() {
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use_header.c");
    std::fs::write(
        &src,
        "#include \"mccc.h\"\n\
         int main(void) {\n\
           McccRecursiveFilter *f = NULL;\n\
           double re, im;\n\
           if (mccc_recursive_new(0.5, 0.0, 0.0, 1e-3, &f) != MCCC_STATUS_OK) return 1;\n\
           mccc_recursive_update(f, 1.0, 0.0, 0.8, -0.4);\n\
           mccc_recursive_weight(f, &re, &im);\n\
           mccc_recursive_free(f);\n\
           return 0;\n\
         }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header_path.parent().unwrap())
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}
