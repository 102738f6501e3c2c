import init, { bound_report, sweep_rows, shift_experiment } from "./pkg/stepbound_wasm.js";

const COLORS = { high: "#b3362c", low: "#0b6e4f", ads: "#1d5fbf", bound: "#8a94a0" };

const fmt = (x, digits = 6) => {
  if (!Number.isFinite(x)) return String(x);
  if (x !== 0 && (Math.abs(x) < 1e-4 || Math.abs(x) >= 1e6)) return x.toExponential(3);
  return x.toPrecision(digits).replace(/\.?0+$/, "");
};

function readout(el, entries) {
  el.innerHTML = "";
  for (const [label, value] of entries) {
    const cell = document.createElement("div");
    const tag = document.createElement("div");
    tag.className = "label";
    tag.textContent = label;
    const val = document.createElement("div");
    val.className = "value";
    val.textContent = value;
    cell.append(tag, val);
    el.append(cell);
  }
}

// Minimal line-plot helper: draws series over a shared x range, with an
// optional log-10 y axis and vertical marker lines.
function plot(canvas, series, opts = {}) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height;
  const pad = { left: 56, right: 12, top: 26, bottom: 30 };
  ctx.clearRect(0, 0, W, H);

  const xs = series[0].x;
  const xMin = xs[0], xMax = xs[xs.length - 1];
  const transform = opts.log ? (v) => Math.log10(Math.max(v, opts.floor ?? 1e-16)) : (v) => v;
  let yMin = Infinity, yMax = -Infinity;
  for (const s of series) {
    for (const v of s.y) {
      const t = transform(v);
      if (t < yMin) yMin = t;
      if (t > yMax) yMax = t;
    }
  }
  if (yMin === yMax) { yMin -= 1; yMax += 1; }
  const spanPad = (yMax - yMin) * 0.06;
  yMin -= spanPad; yMax += spanPad;

  const px = (x) => pad.left + ((x - xMin) / (xMax - xMin)) * (W - pad.left - pad.right);
  const py = (y) => H - pad.bottom - ((transform(y) - yMin) / (yMax - yMin)) * (H - pad.top - pad.bottom);

  ctx.strokeStyle = "#d7dee6";
  ctx.fillStyle = "#5c6b7a";
  ctx.font = "11px ui-monospace, monospace";
  ctx.lineWidth = 1;
  const ticks = 5;
  for (let i = 0; i <= ticks; i++) {
    const ty = yMin + (i / ticks) * (yMax - yMin);
    const y = H - pad.bottom - (i / ticks) * (H - pad.top - pad.bottom);
    ctx.beginPath(); ctx.moveTo(pad.left, y); ctx.lineTo(W - pad.right, y); ctx.stroke();
    const label = opts.log ? `1e${ty.toFixed(1)}` : fmt(ty, 3);
    ctx.fillText(label, 4, y + 3);
  }
  for (let i = 0; i <= ticks; i++) {
    const tx = xMin + (i / ticks) * (xMax - xMin);
    const x = px(tx);
    ctx.fillText(fmt(tx, 3), x - 10, H - 8);
  }

  for (const mark of opts.marks ?? []) {
    ctx.strokeStyle = "#9aa6b2";
    ctx.setLineDash([5, 4]);
    ctx.beginPath(); ctx.moveTo(px(mark), pad.top); ctx.lineTo(px(mark), H - pad.bottom); ctx.stroke();
    ctx.setLineDash([]);
  }

  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = s.width ?? 1.8;
    ctx.setLineDash(s.dash ?? []);
    ctx.beginPath();
    for (let i = 0; i < s.x.length; i++) {
      const x = px(s.x[i]), y = py(s.y[i]);
      if (i === 0) ctx.moveTo(x, y); else ctx.lineTo(x, y);
    }
    ctx.stroke();
    ctx.setLineDash([]);
  }

  ctx.fillStyle = "#1c2430";
  ctx.font = "12px sans-serif";
  if (opts.title) ctx.fillText(opts.title, pad.left, 14);
  let ly = 12;
  for (const s of series) {
    if (!s.label) continue;
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 2;
    ctx.setLineDash(s.dash ?? []);
    ctx.beginPath(); ctx.moveTo(W - pad.right - 150, ly); ctx.lineTo(W - pad.right - 132, ly); ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = "#1c2430";
    ctx.fillText(s.label, W - pad.right - 127, ly + 4);
    ly += 15;
  }

  if (opts.point) {
    ctx.fillStyle = opts.point.color ?? "#b3362c";
    ctx.beginPath();
    ctx.arc(px(opts.point.x), py(opts.point.y), 4, 0, Math.PI * 2);
    ctx.fill();
  }
}

function drawBeliefBars(canvas, probs) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height;
  ctx.clearRect(0, 0, W, H);
  const colors = ["#0b6e4f", "#1d5fbf", "#b3362c"];
  const barH = 18, gap = 10, left = 70;
  probs.forEach((p, i) => {
    const y = 8 + i * (barH + gap);
    ctx.fillStyle = "#5c6b7a";
    ctx.font = "12px ui-monospace, monospace";
    ctx.fillText(`p_${i} = ${fmt(p, 4)}`, 4, y + 13);
    ctx.fillStyle = "#eef1f4";
    ctx.fillRect(left, y, W - left - 10, barH);
    ctx.fillStyle = colors[i % colors.length];
    ctx.fillRect(left, y, (W - left - 10) * p, barH);
  });
}

function currentWeights() {
  return ["w0", "w1", "w2"].map((id) => Number(document.getElementById(id).value));
}

function refreshBound() {
  const weights = currentWeights();
  ["w0", "w1", "w2"].forEach((id, i) => {
    document.getElementById(id + "v").textContent = weights[i].toFixed(3);
  });
  const report = JSON.parse(bound_report(new Float64Array(weights)));
  if (report.error) {
    document.getElementById("status").textContent = report.error;
    return;
  }
  drawBeliefBars(document.getElementById("belief-bars"), report.probs);
  readout(document.getElementById("bound-readout"), [
    ["eta_max", fmt(report.eta_max)],
    ["normalized entropy B", fmt(report.b_entropy)],
    ["barrier alpha", fmt(report.alpha)],
    ["backoff", fmt(report.backoff)],
    ["eta_ce", fmt(report.eta_ce)],
  ]);
}

let sweepData = null;
function refreshSweep() {
  if (!sweepData) sweepData = JSON.parse(sweep_rows(399));
  const x = Number(document.getElementById("sweep-x").value);
  document.getElementById("sweep-xv").textContent = x.toFixed(3);
  const log = document.getElementById("sweep-log").checked;
  const marker = JSON.parse(bound_report(new Float64Array([x, 1 - x])));
  plot(document.getElementById("sweep-plot"), [
    { x: sweepData.x, y: sweepData.eta_max, color: COLORS.low, label: "eta_max" },
    { x: sweepData.x, y: sweepData.eta_ce, color: COLORS.ads, dash: [6, 4], label: "eta_ce" },
  ], {
    log,
    floor: 1e-6,
    title: log ? "step size (log)" : "step size",
    point: { x, y: marker.eta_max, color: "#b3362c" },
  });
}

function runExperiment() {
  const status = document.getElementById("status");
  status.textContent = "";
  const etaHigh = Number(document.getElementById("eta-high").value);
  const etaLow = Number(document.getElementById("eta-low").value);
  const etaBase = Number(document.getElementById("eta-base").value);
  const shift = Number(document.getElementById("shift-step").value);
  const total = Number(document.getElementById("total-steps").value);
  const result = JSON.parse(shift_experiment(etaHigh, etaLow, etaBase, shift, total));
  if (result.error) {
    status.textContent = result.error;
    return;
  }
  const t = result.strategies[0].kl.map((_, i) => i);
  const [high, low, ads] = result.strategies;

  plot(document.getElementById("kl-plot"), [
    { x: t, y: high.kl, color: COLORS.high, label: `high (${fmt(etaHigh, 3)})` },
    { x: t, y: low.kl, color: COLORS.low, label: `low (${fmt(etaLow, 3)})` },
    { x: t, y: ads.kl, color: COLORS.ads, label: "entropy-aware" },
  ], { log: true, floor: 1e-16, title: "KL to active target (log)", marks: [result.shift_step] });

  plot(document.getElementById("p2-plot"), [
    { x: t, y: high.p2, color: COLORS.high, label: "high" },
    { x: t, y: low.p2, color: COLORS.low, label: "low" },
    { x: t, y: ads.p2, color: COLORS.ads, label: "entropy-aware" },
  ], { title: "belief in class 2", marks: [result.shift_step] });

  readout(document.getElementById("experiment-readout"), [
    ["high final KL", fmt(high.final_kl)],
    ["high collapsed", String(high.collapsed)],
    ["low final KL", fmt(low.final_kl)],
    ["low converged at", low.converged_step ?? "never"],
    ["entropy-aware final KL", fmt(ads.final_kl)],
    ["entropy-aware converged at", ads.converged_step ?? "never"],
  ]);
}

async function main() {
  await init();
  refreshBound();
  refreshSweep();
  runExperiment();
  for (const id of ["w0", "w1", "w2"]) {
    document.getElementById(id).addEventListener("input", refreshBound);
  }
  document.getElementById("sweep-x").addEventListener("input", refreshSweep);
  document.getElementById("sweep-log").addEventListener("change", refreshSweep);
  document.getElementById("run-experiment").addEventListener("click", runExperiment);
}

main();
