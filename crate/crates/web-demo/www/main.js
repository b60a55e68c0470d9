import init, { half_normal_curves, sample_field, detecting_sensors, detection_curve } from "./pkg/wsn_web_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const PAD = 40;

function frame(ctx, xmin, xmax, ymin, ymax, xlabel, ylabel) {
  const { width: w, height: h } = ctx.canvas;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#888";
  ctx.strokeRect(PAD, 10, w - PAD - 10, h - PAD - 10);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  for (let i = 0; i <= 4; i++) {
    const fx = xmin + (i / 4) * (xmax - xmin);
    const fy = ymin + (i / 4) * (ymax - ymin);
    ctx.fillText(+fx.toPrecision(3), PAD + (i / 4) * (w - PAD - 10) - 8, h - PAD + 14);
    ctx.fillText(+fy.toPrecision(3), 2, h - PAD - (i / 4) * (h - PAD - 10) + 4);
  }
  ctx.fillText(xlabel, w / 2, h - 6);
  ctx.fillText(ylabel, PAD + 4, 22);
  return {
    x: (v) => PAD + ((v - xmin) / (xmax - xmin)) * (w - PAD - 10),
    y: (v) => h - PAD - ((v - ymin) / (ymax - ymin)) * (h - PAD - 10),
  };
}

function line(ctx, map, rows, stride, xi, yi, color) {
  ctx.strokeStyle = color;
  ctx.lineWidth = 2;
  ctx.beginPath();
  for (let k = 0; k < rows.length; k += stride) {
    const px = map.x(rows[k + xi]);
    const py = map.y(rows[k + yi]);
    k === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
  }
  ctx.stroke();
  ctx.lineWidth = 1;
}

function drawDensity(sigma) {
  const rows = half_normal_curves(sigma, 4 * sigma, 200);
  let top = 1;
  for (let k = 1; k < rows.length; k += 3) top = Math.max(top, rows[k]);
  const ctx = $("density").getContext("2d");
  const map = frame(ctx, 0, 4 * sigma, 0, top, "distance from boundary", "");
  line(ctx, map, rows, 3, 0, 1, "#c0392b");
  line(ctx, map, rows, 3, 0, 2, "#555");
}

function drawField(p) {
  const xy = sample_field(p.model, p.sigma, p.n, BigInt(p.seed));
  const hits = detecting_sensors(xy, p.s, p.d, p.r);
  const half = Math.max(p.s + 2 * p.r, 3 * p.sigma, 10);
  const ctx = $("field").getContext("2d");
  const map = frame(ctx, 0, 2 * half, -half, half, "x", "y");
  ctx.fillStyle = "rgba(255,200,0,0.35)";
  ctx.strokeStyle = "rgba(200,140,0,0.9)";
  ctx.lineWidth = Math.max(1, 2 * p.r * (map.x(1) - map.x(0)));
  ctx.beginPath();
  ctx.moveTo(map.x(p.s), map.y(0));
  ctx.lineTo(map.x(p.s - p.d), map.y(0));
  ctx.lineCap = "round";
  ctx.stroke();
  ctx.lineWidth = 1;
  let seen = 0;
  for (let i = 0; i < hits.length; i++) {
    const x = xy[2 * i], y = xy[2 * i + 1];
    if (x > 2 * half || Math.abs(y) > half) continue;
    ctx.fillStyle = hits[i] ? "#c0392b" : "#2c7fb8";
    ctx.beginPath();
    ctx.arc(map.x(x), map.y(y), hits[i] ? 3.5 : 2, 0, 2 * Math.PI);
    ctx.fill();
    seen += hits[i];
  }
  $("field-note").textContent = seen > 0
    ? `Detected by ${seen} sensor${seen > 1 ? "s" : ""}.`
    : "Not detected in this deployment.";
}

function drawCurve(p) {
  const nMax = Math.max(10, p.n);
  const rows = detection_curve(p.sigma, p.r, p.s, p.d, nMax);
  const ctx = $("curve").getContext("2d");
  const map = frame(ctx, 0, nMax, 0, 1, "number of sensors N", "P_d");
  line(ctx, map, rows, 3, 0, 1, "#c0392b");
  line(ctx, map, rows, 3, 0, 2, "#2c7fb8");
}

function params() {
  return {
    sigma: num("sigma"), r: num("range"), s: num("start"), d: num("distance"),
    n: Math.floor(num("sensors")), model: $("model").value, seed: Math.floor(num("seed")),
  };
}

function update() {
  const p = params();
  try {
    drawDensity(p.sigma);
    drawField(p);
    drawCurve(p);
    $("error").textContent = "";
  } catch (e) {
    $("error").textContent = e.message ?? String(e);
  }
}

await init();
document.querySelectorAll("input, select").forEach((el) => el.addEventListener("input", update));
$("redraw").addEventListener("click", () => { $("seed").value = num("seed") + 1; update(); });
update();
