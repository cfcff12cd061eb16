import init, { skinProfile, relaxationOccupations, entropyCurve } from "./pkg/oqf_wasm.js";

const PAD = { left: 56, right: 16, top: 16, bottom: 32 };

function values(form) {
  return Object.fromEntries([...new FormData(form)].map(([k, v]) => [k, Number(v)]));
}

function status(id, text, isError = false) {
  const el = document.getElementById(id);
  el.textContent = text;
  el.classList.toggle("error", isError);
}

function frame(ctx, xRange, yRange, xLabel, yLabel, yFormat = (y) => y.toPrecision(2)) {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#444";
  ctx.font = "11px system-ui";
  ctx.strokeRect(PAD.left, PAD.top, width - PAD.left - PAD.right, height - PAD.top - PAD.bottom);
  const sx = (x) => PAD.left + ((x - xRange[0]) / (xRange[1] - xRange[0])) * (width - PAD.left - PAD.right);
  const sy = (y) => height - PAD.bottom - ((y - yRange[0]) / (yRange[1] - yRange[0])) * (height - PAD.top - PAD.bottom);
  ctx.textAlign = "center";
  for (let i = 0; i <= 4; i++) {
    const x = xRange[0] + (i / 4) * (xRange[1] - xRange[0]);
    ctx.fillText(Number(x.toPrecision(3)).toString(), sx(x), height - PAD.bottom + 14);
  }
  ctx.fillText(xLabel, (PAD.left + width - PAD.right) / 2, height - 4);
  ctx.textAlign = "right";
  for (let i = 0; i <= 4; i++) {
    const y = yRange[0] + (i / 4) * (yRange[1] - yRange[0]);
    ctx.fillText(yFormat(y), PAD.left - 4, sy(y) + 4);
  }
  ctx.save();
  ctx.translate(12, (PAD.top + height - PAD.bottom) / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.textAlign = "center";
  ctx.fillText(yLabel, 0, 0);
  ctx.restore();
  return { sx, sy };
}

function line(ctx, xs, ys, sx, sy, color, markers = false) {
  ctx.strokeStyle = color;
  ctx.fillStyle = color;
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(sx(x), sy(ys[i])) : ctx.moveTo(sx(x), sy(ys[i]))));
  ctx.stroke();
  if (markers) {
    xs.forEach((x, i) => ctx.fillRect(sx(x) - 2.5, sy(ys[i]) - 2.5, 5, 5));
  }
}

function drawSkin() {
  const p = values(document.getElementById("skin-form"));
  const ctx = document.getElementById("skin-plot").getContext("2d");
  let result;
  try {
    result = skinProfile(p.n, p.omega, p.lambda, p.gamma, p.a, p.delta);
  } catch (e) {
    status("skin-status", String(e.message ?? e), true);
    return;
  }
  const occ = [...result.occupations].map(Math.log10);
  const flat = [...result.featureless].map(Math.log10);
  const sites = occ.map((_, j) => j + 1);
  const lo = Math.floor(Math.min(...occ, ...flat));
  const hi = Math.ceil(Math.max(...occ, ...flat, lo + 1));
  const { sx, sy } = frame(ctx, [1, Math.max(2, p.n)], [lo, hi], "site", "log10 occupation", (y) => y.toFixed(1));
  line(ctx, sites, occ, sx, sy, "#1f6fb4", true);
  line(ctx, sites, flat, sx, sy, "#d9822b", true);
  status(
    "skin-status",
    `κ = ${result.kappa.toPrecision(6)}, slope of ln n_j = ${result.logSlope.toPrecision(8)} ` +
      `(−2 ln κ = ${(-2 * Math.log(result.kappa)).toPrecision(8)}); blue: skin bath, orange: featureless bath`
  );
  result.free();
}

function drawChain() {
  const p = values(document.getElementById("chain-form"));
  let occ, ent;
  try {
    occ = relaxationOccupations(p.sites, p.hopping, p.loss, p.gain, p.tmax, p.samples);
    ent = entropyCurve(p.sites, p.hopping, p.loss, p.gain, p.tmax, p.samples);
  } catch (e) {
    status("chain-status", String(e.message ?? e), true);
    return;
  }
  const times = Array.from({ length: p.samples }, (_, k) => (k * p.tmax) / (p.samples - 1));

  const heat = document.getElementById("occupation-plot").getContext("2d");
  const { sx } = frame(heat, [0, p.tmax], [p.sites + 0.5, 0.5], "time", "site", (y) => y.toFixed(0));
  const top = PAD.top;
  const rowHeight = (heat.canvas.height - PAD.top - PAD.bottom) / p.sites;
  const colWidth = Math.max(1, sx(times[1]) - sx(times[0]) + 0.5);
  for (let k = 0; k < p.samples; k++) {
    for (let j = 0; j < p.sites; j++) {
      const v = occ[k * p.sites + j];
      const shade = Math.round(255 * (1 - v));
      heat.fillStyle = `rgb(${shade}, ${shade}, 255)`;
      heat.fillRect(sx(times[k]), top + j * rowHeight, colWidth, rowHeight + 0.5);
    }
  }

  const ctx = document.getElementById("entropy-plot").getContext("2d");
  const hi = Math.max(...ent, 1e-12) * 1.05;
  const plot = frame(ctx, [0, p.tmax], [0, hi], "time", "entropy (nats)");
  line(ctx, times, [...ent], plot.sx, plot.sy, "#2a9d54");
  status("chain-status", `final entropy ${ent[ent.length - 1].toPrecision(6)} nats; darker blue = fuller site`);
}

function bind(formId, draw) {
  document.getElementById(formId).addEventListener("submit", (e) => {
    e.preventDefault();
    draw();
  });
}

await init();
bind("skin-form", drawSkin);
bind("chain-form", drawChain);
drawSkin();
drawChain();
