"""Calibration v2: envelope-guarded dataset, stable pressures, lr sweep."""
import time
import numpy as np

from softarm import dataset as ds
from softarm import evaluation, fem, geometry, patches, uvmap
from softarm.surrogate import naive, training, unet

t0 = time.time()
profile = geometry.ArmProfile(n_circ=24, n_axial=18, n_layers=2)
mat = fem.MaterialParams()
settings = fem.SolveSettings(newton_tolerance=1e-7)
spec = uvmap.default_normalization()
res = 128

patch_list = []
for cu in (0.1, 0.35, 0.6, 0.85):
    for cv in (0.3, 0.6):
        patch_list.append(patches.ForcePatch("circle", (cu, cv), (0.17, 0.17)))
for cv in (0.45, 0.75):
    patch_list.append(patches.ForcePatch("circle", (0.0, cv), (0.17, 0.17)))

records, failures = ds.generate_dataset(
    profile, mat, thickness_variants=(5.0, 6.25, 7.5, 8.75, 10.0),
    patch_list=patch_list, forces=(2, 4, 6, 8, 10),
    resolution=res, solve_settings=settings,
)
print(f"[{time.time()-t0:.0f}s] generated {len(records)}, failures {len(failures)}", flush=True)
for sid, why in failures:
    print("  fail:", sid, why[:90])
records, removed = ds.clean(records)
maxdef = [np.linalg.norm(r.raw_displacements, axis=1).max() for r in records]
print("maxdef mm min/med/max:", np.min(maxdef), np.median(maxdef), np.max(maxdef), flush=True)

train, val, test = ds.split(records, ds.SplitSpec(seed=0))
xt, tt = ds.stack_tensors(train)
xv, tv = ds.stack_tensors(val)
print("splits:", len(train), len(val), len(test), flush=True)

nparams = naive.naive_fit(xt[:, 0] * xt[:, 1], tt.transpose(0, 2, 3, 1), lr=2e-2, steps=400, seed=0)
print("naive alphas:", nparams, flush=True)
contexts = evaluation.contexts_for(test, profile, res, spec)
rep_n = evaluation.evaluate_records(test, contexts, spec, "naive", naive_params=nparams)

cfg = unet.UNetConfig(base_channels=16, depth=5)
for lr in (1e-4, 3e-4, 1e-3):
    tset = training.TrainSettings(epochs=20, batch_size=8, learning_rate=lr)
    params, history = training.train(xt, tt, xv, tv, cfg, tset, seed=0)
    rep_u = evaluation.evaluate_records(test, contexts, spec, f"unet lr={lr:g}",
                                        unet_params=params, unet_config=cfg)
    print(f"lr={lr:g}: last train {history[-1].train_l2:.3e} "
          f"best val {min(h.val_l2 for h in history):.3e} "
          f"MEE {rep_u.mee_mean:.4f} vs naive {rep_n.mee_mean:.4f} "
          f"ratio {rep_u.mee_mean/rep_n.mee_mean:.3f} "
          f"[{time.time()-t0:.0f}s]", flush=True)
print(evaluation.render_report([rep_n]))
