import init, { fidelity_curve, monte_carlo_sweep, optimum } from "./pkg/teleport_sr_web.js";

const LO = 0.01;
const HI = 3.0;
const CLASSICAL = 2 / 3;

const $ = (id) => document.getElementById(id);
const canvas = $("plot");
const ctx = canvas.getContext("2d");
const status = $("status");
const sliders = ["center", "amplitude", "threshold", "werner", "theta", "phi"];

let mc = null;
let best = null;

function params() {
  const v = (id) => parseFloat($(id).value);
  return [$("family").value, v("center"), v("amplitude"), v("threshold"), v("werner"), v("theta"), v("phi")];
}

const frame = { left: 60, right: 20, top: 20, bottom: 45, y0: 0.45, y1: 1.0 };

function px(x) {
  return frame.left + ((x - 0) / HI) * (canvas.width - frame.left - frame.right);
}

function py(y) {
  const h = canvas.height - frame.top - frame.bottom;
  return canvas.height - frame.bottom - ((y - frame.y0) / (frame.y1 - frame.y0)) * h;
}

function line(xs, ys, colour, width, dash = []) {
  ctx.beginPath();
  ctx.strokeStyle = colour;
  ctx.lineWidth = width;
  ctx.setLineDash(dash);
  xs.forEach((x, i) => (i ? ctx.lineTo(px(x), py(ys[i])) : ctx.moveTo(px(x), py(ys[i]))));
  ctx.stroke();
  ctx.setLineDash([]);
}

function hline(y, colour, label) {
  line([0, HI], [y, y], colour, 1, [8, 4]);
  ctx.fillStyle = colour;
  ctx.textAlign = "right";
  ctx.fillText(label, px(HI) - 4, py(y) - 5);
}

function axes() {
  ctx.strokeStyle = "#000";
  ctx.lineWidth = 1;
  ctx.strokeRect(frame.left, frame.top, px(HI) - frame.left, py(frame.y0) - frame.top);
  ctx.fillStyle = "#000";
  ctx.textAlign = "center";
  for (let t = 0; t <= HI + 1e-9; t += 0.5) ctx.fillText(t.toFixed(1), px(t), py(frame.y0) + 16);
  ctx.fillText("noise scale", px(HI / 2), canvas.height - 8);
  ctx.textAlign = "right";
  for (let t = 0.5; t <= frame.y1 + 1e-9; t += 0.1) ctx.fillText(t.toFixed(1), frame.left - 6, py(t) + 4);
}

function draw() {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.font = "12px sans-serif";
  axes();
  hline(CLASSICAL, "firebrick", "classical limit");
  hline(0.5, "dimgray", "F = 1/2");

  let curve;
  try {
    curve = JSON.parse(fidelity_curve(...params(), LO, HI, 300));
  } catch (e) {
    status.textContent = String(e.message ?? e);
    return;
  }
  line(curve.scales, curve.fidelity, "darkorange", 2);

  if (mc) {
    const s = mc.rows.map((r) => r.scale);
    line(s, mc.rows.map((r) => r.mc_min), "steelblue", 1, [2, 3]);
    line(s, mc.rows.map((r) => r.mc_max), "steelblue", 1, [2, 3]);
    line(s, mc.rows.map((r) => r.mc_smoothed), "navy", 3);
  }
  if (best && best.scale_opt !== undefined) {
    ctx.fillStyle = "darkgreen";
    ctx.beginPath();
    ctx.arc(px(best.scale_opt), py(best.f_opt), 5, 0, 2 * Math.PI);
    ctx.fill();
  }
  const [lo, hi] = curve.interval;
  const verdict = curve.sr_predicted ? "outside, noise can help" : "inside, noise only hurts";
  if (!status.dataset.busy) {
    status.textContent = `forbidden interval (${lo.toFixed(2)}, ${hi.toFixed(2)}): center is ${verdict}`;
    if (best) status.textContent += best.regime ? "; monotone regime" : `; optimum ${best.scale_opt.toFixed(4)} with F = ${best.f_opt.toFixed(4)}`;
  }
}

function refresh() {
  mc = null;
  best = null;
  for (const id of sliders) document.querySelector(`output[for=${id}]`).textContent = parseFloat($(id).value).toFixed(2);
  draw();
}

async function main() {
  await init();
  for (const id of [...sliders, "family"]) $(id).addEventListener("input", refresh);

  $("run-mc").addEventListener("click", () => {
    status.dataset.busy = "1";
    status.textContent = "running 20 runs x 2000 trials on 60 scales...";
    setTimeout(() => {
      try {
        mc = JSON.parse(monte_carlo_sweep(...params(), LO, HI, 60, 20, 2000, 5, BigInt(Date.now())));
      } catch (e) {
        status.textContent = String(e.message ?? e);
      }
      delete status.dataset.busy;
      draw();
    }, 20);
  });

  $("find-opt").addEventListener("click", () => {
    try {
      best = JSON.parse(optimum(...params(), 1e-3, 10));
    } catch (e) {
      status.textContent = String(e.message ?? e);
    }
    draw();
  });

  refresh();
}

main();
