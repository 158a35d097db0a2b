"""Calibration: medium dataset, short training, UNET-vs-naive MEE ratio."""
import sys, time
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
for cu in (0.2, 0.6):
    for cv in (0.35, 0.65):
        patch_list.append(patches.ForcePatch("circle", (cu, cv), (0.14, 0.14)))
for cv in (0.4, 0.7):
    patch_list.append(patches.ForcePatch("circle", (0.0, cv), (0.14, 0.14)))

records, failures = ds.generate_dataset(
    profile, mat, thickness_variants=(5.0, 6.25, 7.5, 8.75, 10.0),
    patch_list=patch_list, forces=(2, 4, 6, 8, 10),
    resolution=res, solve_settings=settings,
)
print(f"[{time.time()-t0:.0f}s] generated {len(records)} records, {len(failures)} failures", flush=True)
records, removed = ds.clean(records)
print(f"cleaned out {removed}")
maxdef = [np.linalg.norm(r.raw_displacements, axis=1).max() for r in records]
print("max deformation mm: min/median/max:", np.min(maxdef), np.median(maxdef), np.max(maxdef))

train, val, test = ds.split(records, ds.SplitSpec(seed=0))
xt, tt = ds.stack_tensors(train)
xv, tv = ds.stack_tensors(val)
print("train/val/test:", len(train), len(val), len(test), flush=True)

cfg = unet.UNetConfig(base_channels=16, depth=5)
tset = training.TrainSettings(epochs=15, batch_size=8, learning_rate=1e-4)
params, history = training.train(xt, tt, xv, tv, cfg, tset, seed=0)
for h in history:
    print(f"epoch {h.epoch}: train {h.train_l2:.3e} val {h.val_l2:.3e}", flush=True)
print(f"[{time.time()-t0:.0f}s] trained", flush=True)

tf_inputs = xt[:, 0] * xt[:, 1]
targets = tt.transpose(0, 2, 3, 1)
nparams = naive.naive_fit(tf_inputs, targets, lr=2e-2, steps=400, seed=0)
closed = naive.naive_closed_form(tf_inputs, targets)
print("naive alphas:", nparams, "closed:", closed)

contexts = evaluation.contexts_for(test, profile, res, spec)
rep_u = evaluation.evaluate_records(test, contexts, spec, "unet", unet_params=params, unet_config=cfg)
rep_n = evaluation.evaluate_records(test, contexts, spec, "naive", naive_params=nparams)
print(evaluation.render_report([rep_u, rep_n]))
print("MEE ratio unet/naive:", rep_u.mee_mean / rep_n.mee_mean)
print(f"[{time.time()-t0:.0f}s] done", flush=True)
