"""Calibration v3: long training at lr 1e-3 on the cleaned medium dataset."""
import time
import numpy as np

from softarm import dataset as ds
from softarm import evaluation, fem, geometry, patches, uvmap
from softarm.surrogate import naive, training, unet

t0 = time.time()
profile = geometry.ArmProfile(n_circ=24, n_axial=18, n_layers=2)
spec = uvmap.default_normalization()
res = 128

patch_list = []
for cu in (0.1, 0.35, 0.6, 0.85):
    for cv in (0.3, 0.6):
        patch_list.append(patches.ForcePatch("circle", (cu, cv), (0.17, 0.17)))
for cv in (0.45, 0.75):
    patch_list.append(patches.ForcePatch("circle", (0.0, cv), (0.17, 0.17)))

records, failures = ds.generate_dataset(
    profile, fem.MaterialParams(), thickness_variants=(5.0, 6.25, 7.5, 8.75, 10.0),
    patch_list=patch_list, forces=(2, 4, 6, 8, 10),
    resolution=res, solve_settings=fem.SolveSettings(newton_tolerance=1e-7),
)
records, _ = ds.clean(records)
ds.save_dataset(".calib/calib3.sfd", records, {"resolution": res})
print(f"[{time.time()-t0:.0f}s] {len(records)} records saved", flush=True)

train, val, test = ds.split(records, ds.SplitSpec(seed=0))
xt, tt = ds.stack_tensors(train)
xv, tv = ds.stack_tensors(val)

nparams = naive.naive_fit(xt[:, 0] * xt[:, 1], tt.transpose(0, 2, 3, 1), lr=2e-2, steps=400, seed=0)
contexts = evaluation.contexts_for(test, profile, res, spec)
rep_n = evaluation.evaluate_records(test, contexts, spec, "naive", naive_params=nparams)
print("naive MEE:", rep_n.mee_mean, flush=True)

cfg = unet.UNetConfig(base_channels=16, depth=5)
params = None
history_all = []
for chunk in range(6):
    tset = training.TrainSettings(epochs=20, batch_size=8, learning_rate=1e-3)
    params, history = training.train(
        xt, tt, xv, tv, cfg, tset, seed=chunk,
        initial_params=params,
    )
    history_all.extend(history)
    rep_u = evaluation.evaluate_records(test, contexts, spec, "unet",
                                        unet_params=params, unet_config=cfg)
    print(f"after {20*(chunk+1)} epochs: train {history[-1].train_l2:.3e} "
          f"val {min(h.val_l2 for h in history):.3e} "
          f"MEE {rep_u.mee_mean:.4f} ratio {rep_u.mee_mean/rep_n.mee_mean:.3f} "
          f"[{time.time()-t0:.0f}s]", flush=True)
