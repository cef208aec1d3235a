from setpsnr import Evaluator, SimConfig, emit, predicted_gap
from setpsnr.media import read_mse_list
from setpsnr.distribution import gap_vs_set_size
from setpsnr.utils.prng import SplitMix64

directory = "/home/user/sr_results"
mse_list = directory + "/rcan_x4_div2k_val.txt"

sizes = (1, 5, 10, 30, 50, 100)
peak = 1.0

# ======================================================================================
# Published MSEs: both set estimates and the distribution audit
# ======================================================================================
entries = read_mse_list(mse_list)

with Evaluator(zero_mse="floor") as evaluator:
    usable = [n for n in sizes if n <= len(entries)]
    report = evaluator.analyze(entries, peak=peak, sizes=usable)

    with open(directory + "/rcan_x4_report.json", "w") as f:
        f.write(emit(report, "json"))

    print("cv = %.4f, KS = %.4f" % (report.audit.cv, report.audit.ks_statistic))

    # ==================================================================================
    # Exponential MSEs with the same mean: how large is the gap for small test sets?
    # ==================================================================================
    lam = 1.0 / report.set_estimate.mse_mean
    samples = SplitMix64(7).exponential(max(sizes), lam)

    for n, psnr_bar, psnr_of_mean, gap in gap_vs_set_size(samples, sizes, peak):
        print("%4d  %.3f dB  %.3f dB  gap %.3f dB" % (n, psnr_bar, psnr_of_mean, gap))

    # ==================================================================================
    # Monte Carlo check of the large-set limit
    # ==================================================================================
    sim = evaluator.simulate(SimConfig(1000000, lam=lam, seed=7, n_trials=20))
    print(
        "mean gap %.6f dB, predicted %.6f dB"
        % (sim.simulation.mean_gap, predicted_gap())
    )
