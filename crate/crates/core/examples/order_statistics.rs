//! Closed-form order-statistic expectations next to the tail approximations.

use span_shrink::order_stats::*;

fn main() -> Result<(), span_shrink::Error> {
    let n = 100;
    println!("uniform on [0, 1], n = {n}");
    println!(
        "  E[X_(37)]          = {:.6}",
        uniform_expected_order_stat(n, 37, 1.0)?
    );
    println!(
        "  E[D_3]             = {:.6}",
        uniform_expected_trimmed_diameter(n, 3, 1.0)?
    );
    println!(
        "  E[T_1] exact       = {:.6}",
        uniform_exact_shrink_ratio_p1(n)?
    );
    println!(
        "  mean shift         = {:.6}",
        uniform_mean_shift_remove_max(n, 1.0)?
    );

    println!("standard normal, n = {n}");
    println!(
        "  E[max |X|]         = {:.5}",
        gaussian_expected_max_abs(n, 1.0)?
    );
    println!(
        "  refined            = {:.5}",
        gaussian_expected_max_abs_refined(n, 1.0)?
    );
    println!(
        "  mean shift         = {:.6}",
        gaussian_mean_shift_remove_max(n, 1.0)?
    );

    for n in [100, 499] {
        println!("upper tail, n = {n}");
        println!(
            "  {:>3} {:>12} {:>12} {:>10}",
            "K", "harmonic", "alternating", "gap"
        );
        for depth in 0..=4 {
            let u = gaussian_expected_order_stat_harmonic(n, n - depth, 1.0)?;
            let v = gaussian_expected_order_stat_sum(n, n - depth, 1.0)?;
            println!("  {depth:>3} {u:>12.8} {v:>12.8} {:>10.6}", (u - v).abs());
        }
    }
    Ok(())
}
