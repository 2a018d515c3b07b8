import init, { integrate, hausdorffGap, deriveBalls } from "./pkg/mvmeasure_wasm.js";

const $ = (id) => document.getElementById(id);

function view(canvas, shapes) {
  const pts = shapes.flatMap((s) => s.points);
  let [x0, x1, y0, y1] = [-1, 1, -1, 1];
  for (const [x, y] of pts) {
    x0 = Math.min(x0, x); x1 = Math.max(x1, x);
    y0 = Math.min(y0, y); y1 = Math.max(y1, y);
  }
  const span = Math.max(x1 - x0, y1 - y0) * 1.15;
  const cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
  const s = canvas.width / span;
  return ([x, y]) => [canvas.width / 2 + (x - cx) * s, canvas.height / 2 - (y - cy) * s];
}

function draw(canvas, shapes, extra) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const map = view(canvas, shapes);
  const [ox, oy] = map([0, 0]);
  ctx.strokeStyle = "#ccc";
  ctx.beginPath();
  ctx.moveTo(0, oy); ctx.lineTo(canvas.width, oy);
  ctx.moveTo(ox, 0); ctx.lineTo(ox, canvas.height);
  ctx.stroke();
  for (const sh of shapes) {
    ctx.beginPath();
    sh.points.forEach((p, i) => {
      const [x, y] = map(p);
      i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
    });
    ctx.closePath();
    ctx.fillStyle = sh.fill;
    ctx.strokeStyle = sh.stroke;
    ctx.lineWidth = sh.width ?? 1.5;
    ctx.fill();
    ctx.stroke();
  }
  if (extra) extra(ctx, map);
}

function call(out, f) {
  try {
    return JSON.parse(f());
  } catch (e) {
    out.textContent = String(e);
    return null;
  }
}

const ATOMS = [
  [[0, 0], [1.5, 0.2], [0.8, 1.2]],
  [[-1, 0.5], [-0.2, 0.4], [-0.3, 1.5], [-1.2, 1.3]],
  [[0.2, -1], [0.9, -0.6], [0.3, -0.2]],
];

function runIntegral() {
  const f = [0, 1, 2].map((i) => {
    const v = Number($(`f${i}`).value);
    $(`f${i}v`).textContent = v.toFixed(1);
    return v;
  });
  const out = $("int-out");
  const r = call(out, () => integrate(JSON.stringify(ATOMS), Float64Array.from(f)));
  if (!r) return;
  draw($("int-canvas"), [
    ...r.atoms.map((points) => ({ points, fill: "rgba(150,170,190,.35)", stroke: "#678" })),
    { points: r.integral, fill: "rgba(220,120,50,.25)", stroke: "#c52", width: 2 },
  ]);
  out.textContent = `integral vertices: ${r.integral.length}\nscalar-route residual: ${r.residual.toExponential(2)}`;
}

const A = [[-1.2, -0.8], [1.0, -1.0], [1.4, 0.6], [-0.2, 1.3]];
const B0 = [[-0.4, -1.6], [2.1, -0.2], [0.1, 1.9]];

function runHausdorff() {
  const n = Number($("dirs").value), t = Number($("rot").value);
  $("dv").textContent = n;
  $("rv").textContent = t.toFixed(2);
  const B = B0.map(([x, y]) => [x * Math.cos(t) - y * Math.sin(t), x * Math.sin(t) + y * Math.cos(t)]);
  const out = $("hd-out");
  const r = call(out, () => hausdorffGap(JSON.stringify(A), JSON.stringify(B), n));
  if (!r) return;
  draw($("hd-canvas"), [
    { points: A, fill: "rgba(60,120,200,.2)", stroke: "#37c" },
    { points: B, fill: "rgba(200,60,90,.2)", stroke: "#c36" },
  ], (ctx, map) => {
    const [ox, oy] = map([0, 0]);
    ctx.strokeStyle = "rgba(0,0,0,.25)";
    ctx.lineWidth = 1;
    for (const [x, y] of r.directions) {
      const [px, py] = map([x * 0.4, y * 0.4]);
      ctx.beginPath(); ctx.moveTo(ox, oy); ctx.lineTo(px, py); ctx.stroke();
    }
  });
  out.textContent =
    `exact d_H:   ${r.exact.toFixed(6)}\nsampled sup: ${r.sampled.toFixed(6)}\n` +
    `relative gap: ${(100 * r.relative_gap).toFixed(3)} %`;
}

const N = [{ center: [1.2, 0.4], radius: 0.6 }, { center: [-0.8, 1.0], radius: 0.4 }];

function runDerive() {
  const th = [0, 1].map((i) => {
    const v = Number($(`t${i}`).value);
    $(`t${i}v`).textContent = v.toFixed(2);
    return v;
  });
  const p = Number($("pert").value);
  $("pv").textContent = p.toFixed(3);
  const M = N.map((b, i) => ({
    center: b.center.map((c) => th[i] * c),
    radius: Math.max(Math.abs(th[i]) * b.radius + (i === 0 ? p : 0), 0),
  }));
  const out = $("rn-out");
  const r = call(out, () => deriveBalls(JSON.stringify(M), JSON.stringify(N)));
  if (!r) return;
  const circle = ({ center: [x, y], radius }) =>
    Array.from({ length: 72 }, (_, k) => [x + radius * Math.cos(k * Math.PI / 36), y + radius * Math.sin(k * Math.PI / 36)]);
  draw($("rn-canvas"), [
    ...N.map((b) => ({ points: circle(b), fill: "rgba(150,170,190,.3)", stroke: "#678" })),
    ...M.map((b) => ({ points: circle(b), fill: "rgba(90,170,90,.25)", stroke: "#393" })),
  ]);
  out.textContent = r.outcome === "derivative"
    ? `dM/dN = θ = [${r.theta.map((t) => t.toFixed(4)).join(", ")}]`
    : `no derivative at atom ω${r.atom + 1}: ${r.reason}\nresidual ${r.residual.toExponential(3)}`;
}

async function main() {
  try {
    await init();
  } catch (e) {
    $("status").textContent = `could not load the wasm module: ${e}`;
    return;
  }
  for (const id of ["f0", "f1", "f2"]) $(id).addEventListener("input", runIntegral);
  for (const id of ["dirs", "rot"]) $(id).addEventListener("input", runHausdorff);
  for (const id of ["t0", "t1", "pert"]) $(id).addEventListener("input", runDerive);
  runIntegral();
  runHausdorff();
  runDerive();
}

main();
