import init, { Grid, autoWeights, probeDcn, deformFrame, slerp, blend, transform } from "./pkg/dcn_wasm.js";

const ROWS = 30, COLS = 30, ALPHA = 2, EPS = 1e-6;
const RING = 30, KNOB = 7, HIT = 12;

const $ = (id) => document.getElementById(id);

function fatal(msg) {
  const el = $("fatal");
  el.textContent = "Could not load the WebAssembly core: " + msg +
    ". Build it with wasm-pack or wasm-bindgen into www/pkg and serve this directory over HTTP.";
  el.style.display = "block";
}

try {
  await init();
} catch (e) {
  fatal(e.message ?? String(e));
  throw e;
}

// wrap an angle difference into (-pi, pi] so accumulated angles stay unwrapped
const wrap = (a) => a - 2 * Math.PI * Math.ceil((a - Math.PI) / (2 * Math.PI));

// ---------------------------------------------------------------- deformer

const canvas = $("deformer");
const ctx = canvas.getContext("2d");
const MARGIN = 50;
const rect = [MARGIN, MARGIN, canvas.width - MARGIN, canvas.height - MARGIN];
const grid = new Grid(ROWS, COLS, Float64Array.from(rect));
const rest = grid.vertices;
const tris = grid.triangles;
const uv = grid.uv;

let texture = checkerTexture();
let probes = [];
let nextId = 0;
let weights = null;
let positions = rest.slice();
let mode = "place";
let degenerate = 0;
let frameTimes = [];

function checkerTexture() {
  const t = document.createElement("canvas");
  t.width = 512;
  t.height = 384;
  const g = t.getContext("2d");
  const n = 8;
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      g.fillStyle = (i + j) % 2 ? `hsl(${200 + 10 * i}, 55%, 55%)` : `hsl(${30 + 8 * j}, 70%, 80%)`;
      g.fillRect((i * t.width) / n, (j * t.height) / n, t.width / n + 1, t.height / n + 1);
    }
  }
  g.fillStyle = "#222";
  g.font = "bold 64px system-ui, sans-serif";
  g.textAlign = "center";
  g.fillText("p₀ + p₁ε", t.width / 2, t.height / 2 + 22);
  return t;
}

function recomputeWeights() {
  if (probes.length === 0) {
    weights = null;
    return;
  }
  const centers = new Float64Array(probes.flatMap((p) => [p.initial.x, p.initial.y]));
  weights = autoWeights(rest, centers, ALPHA, EPS);
}

function deformNow() {
  if (mode !== "deform" || probes.length === 0) {
    positions = rest.slice();
    degenerate = 0;
    return;
  }
  const dcns = new Float64Array(4 * probes.length);
  probes.forEach((p, k) => {
    const i = p.initial, c = p.current;
    dcns.set(probeDcn(Float64Array.of(i.x, i.y, i.a), Float64Array.of(c.x, c.y, c.a)), 4 * k);
  });
  const t0 = performance.now();
  const out = deformFrame(rest, dcns, weights, positions);
  frameTimes.push(performance.now() - t0);
  if (frameTimes.length > 30) frameTimes.shift();
  positions = out.subarray(0, rest.length);
  degenerate = out[rest.length];
}

function drawTriangle(sx, sy, dx, dy) {
  const det = (sx[1] - sx[0]) * (sy[2] - sy[0]) - (sx[2] - sx[0]) * (sy[1] - sy[0]);
  if (Math.abs(det) < 1e-12) return;
  const ex1 = dx[1] - dx[0], ex2 = dx[2] - dx[0];
  const ey1 = dy[1] - dy[0], ey2 = dy[2] - dy[0];
  const a = (ex1 * (sy[2] - sy[0]) - ex2 * (sy[1] - sy[0])) / det;
  const c = (ex2 * (sx[1] - sx[0]) - ex1 * (sx[2] - sx[0])) / det;
  const b = (ey1 * (sy[2] - sy[0]) - ey2 * (sy[1] - sy[0])) / det;
  const d = (ey2 * (sx[1] - sx[0]) - ey1 * (sx[2] - sx[0])) / det;
  const e = dx[0] - a * sx[0] - c * sy[0];
  const f = dy[0] - b * sx[0] - d * sy[0];
  // grow the clip path slightly about the centroid to hide seams
  const cx = (dx[0] + dx[1] + dx[2]) / 3, cy = (dy[0] + dy[1] + dy[2]) / 3;
  ctx.save();
  ctx.beginPath();
  for (let k = 0; k < 3; k++) {
    const vx = dx[k] - cx, vy = dy[k] - cy;
    const len = Math.hypot(vx, vy) || 1;
    const grow = (len + 0.6) / len;
    ctx.lineTo(cx + vx * grow, cy + vy * grow);
  }
  ctx.closePath();
  ctx.clip();
  ctx.setTransform(a, b, c, d, e, f);
  ctx.drawImage(texture, 0, 0);
  ctx.restore();
}

function drawDeformer() {
  ctx.setTransform(1, 0, 0, 1, 0, 0);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const tw = texture.width, th = texture.height;
  const sx = [0, 0, 0], sy = [0, 0, 0], dx = [0, 0, 0], dy = [0, 0, 0];
  for (let t = 0; t < tris.length; t += 3) {
    for (let k = 0; k < 3; k++) {
      const v = tris[t + k];
      sx[k] = uv[2 * v] * tw;
      sy[k] = uv[2 * v + 1] * th;
      dx[k] = positions[2 * v];
      dy[k] = positions[2 * v + 1];
    }
    drawTriangle(sx, sy, dx, dy);
  }
  if ($("wire").checked) {
    ctx.strokeStyle = "rgba(0,0,0,0.25)";
    ctx.lineWidth = 0.5;
    ctx.beginPath();
    for (let t = 0; t < tris.length; t += 3) {
      const [i, j, k] = [tris[t], tris[t + 1], tris[t + 2]];
      ctx.moveTo(positions[2 * i], positions[2 * i + 1]);
      ctx.lineTo(positions[2 * j], positions[2 * j + 1]);
      ctx.lineTo(positions[2 * k], positions[2 * k + 1]);
      ctx.closePath();
    }
    ctx.stroke();
  }
  for (const p of probes) {
    const c = p.current;
    if (mode === "deform") {
      ctx.strokeStyle = "rgba(23,105,170,0.35)";
      ctx.setLineDash([3, 3]);
      ctx.beginPath();
      ctx.arc(p.initial.x, p.initial.y, 6, 0, 2 * Math.PI);
      ctx.stroke();
      ctx.setLineDash([]);
      ctx.strokeStyle = "#1769aa";
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      ctx.arc(c.x, c.y, RING, 0, 2 * Math.PI);
      ctx.stroke();
      const kx = c.x + RING * Math.cos(c.a), ky = c.y + RING * Math.sin(c.a);
      ctx.fillStyle = "#fff";
      ctx.beginPath();
      ctx.arc(kx, ky, KNOB, 0, 2 * Math.PI);
      ctx.fill();
      ctx.stroke();
    }
    ctx.fillStyle = "#1769aa";
    ctx.beginPath();
    ctx.arc(c.x, c.y, 7, 0, 2 * Math.PI);
    ctx.fill();
  }
  $("warn").classList.toggle("on", degenerate > 0);
  $("warn").textContent = `degenerate blend at ${degenerate} vertices`;
  if (frameTimes.length) {
    const avg = frameTimes.reduce((s, x) => s + x, 0) / frameTimes.length;
    $("timing").textContent = ` deform call ${avg.toFixed(2)} ms (${ROWS}×${COLS} grid, ${probes.length} probes)`;
  }
}

function redraw() {
  deformNow();
  drawDeformer();
}

function setStatus() {
  $("mode").textContent = mode === "place" ? "Start deforming" : "Back to placing";
  $("mode").disabled = probes.length === 0;
  $("status").textContent =
    mode === "place"
      ? `Place mode, ${probes.length} probe${probes.length === 1 ? "" : "s"}.`
      : "Deform mode: initial poses frozen.";
}

function pointer(ev) {
  const r = canvas.getBoundingClientRect();
  return { x: ((ev.clientX - r.left) * canvas.width) / r.width, y: ((ev.clientY - r.top) * canvas.height) / r.height };
}

const inside = (p) => p.x >= rect[0] && p.x <= rect[2] && p.y >= rect[1] && p.y <= rect[3];

function probeAt(p) {
  return probes.find((q) => Math.hypot(q.current.x - p.x, q.current.y - p.y) <= HIT);
}

function knobAt(p) {
  return probes.find((q) => {
    const c = q.current;
    return Math.hypot(c.x + RING * Math.cos(c.a) - p.x, c.y + RING * Math.sin(c.a) - p.y) <= KNOB + 3;
  });
}

const pointers = new Map();
let gesture = null;

canvas.addEventListener("pointerdown", (ev) => {
  const p = pointer(ev);
  pointers.set(ev.pointerId, p);
  canvas.setPointerCapture(ev.pointerId);
  if (mode === "place") {
    const hit = probeAt(p);
    if (hit && ev.shiftKey) {
      probes = probes.filter((q) => q !== hit);
    } else if (!hit && inside(p)) {
      const pose = { x: p.x, y: p.y, a: 0 };
      probes.push({ id: nextId++, initial: { ...pose }, current: { ...pose } });
    }
    recomputeWeights();
    setStatus();
    redraw();
    return;
  }
  if (pointers.size === 2 && gesture) {
    const [a, b] = [...pointers.values()];
    gesture = { kind: "twist", probe: gesture.probe, last: Math.atan2(b.y - a.y, b.x - a.x) };
    return;
  }
  const knob = knobAt(p);
  if (knob) {
    gesture = { kind: "rotate", probe: knob, last: Math.atan2(p.y - knob.current.y, p.x - knob.current.x) };
    return;
  }
  const hit = probeAt(p);
  if (hit) gesture = { kind: "drag", probe: hit, dx: hit.current.x - p.x, dy: hit.current.y - p.y };
});

canvas.addEventListener("pointermove", (ev) => {
  if (!pointers.has(ev.pointerId)) return;
  const p = pointer(ev);
  pointers.set(ev.pointerId, p);
  if (!gesture) return;
  const c = gesture.probe.current;
  if (gesture.kind === "drag") {
    c.x = p.x + gesture.dx;
    c.y = p.y + gesture.dy;
  } else if (gesture.kind === "rotate") {
    const ang = Math.atan2(p.y - c.y, p.x - c.x);
    c.a += wrap(ang - gesture.last);
    gesture.last = ang;
  } else if (gesture.kind === "twist" && pointers.size === 2) {
    const [a, b] = [...pointers.values()];
    const ang = Math.atan2(b.y - a.y, b.x - a.x);
    c.a += wrap(ang - gesture.last);
    gesture.last = ang;
  }
  redraw();
});

function release(ev) {
  pointers.delete(ev.pointerId);
  if (pointers.size === 0) gesture = null;
}
canvas.addEventListener("pointerup", release);
canvas.addEventListener("pointercancel", release);

$("mode").addEventListener("click", () => {
  if (mode === "place" && probes.length) {
    mode = "deform";
  } else {
    mode = "place";
    for (const p of probes) p.current = { ...p.initial };
  }
  positions = rest.slice();
  frameTimes = [];
  setStatus();
  redraw();
});

$("clear").addEventListener("click", () => {
  probes = [];
  mode = "place";
  recomputeWeights();
  setStatus();
  redraw();
});

$("wire").addEventListener("change", drawDeformer);

$("image").addEventListener("change", async (ev) => {
  const file = ev.target.files[0];
  if (!file) return;
  texture = await createImageBitmap(file);
  drawDeformer();
});

setStatus();
redraw();

// ---------------------------------------------------------- interpolation

const icv = $("interp");
const ictx = icv.getContext("2d");
const SHAPE = new Float64Array([-20, -14, 26, -14, 26, -26, 46, 0, 26, 26, 26, 14, -20, 14]);
const start = { x: 100, y: 310, a: 0 };
const end = { x: 360, y: 120, a: 2.6 };
const origin = Float64Array.of(0, 0, 0);
let dragEnd = null;

const poseDcn = (p) => probeDcn(origin, Float64Array.of(p.x, p.y, p.a));

function outline(pts, stroke, fill) {
  ictx.beginPath();
  for (let k = 0; k < pts.length; k += 2) ictx.lineTo(pts[k], pts[k + 1]);
  ictx.closePath();
  if (fill) {
    ictx.fillStyle = fill;
    ictx.fill();
  }
  ictx.strokeStyle = stroke;
  ictx.stroke();
}

function samplePath(dcnAt, color) {
  ictx.strokeStyle = color;
  ictx.lineWidth = 1;
  ictx.beginPath();
  for (let k = 0; k <= 60; k++) {
    const d = dcnAt(k / 60);
    if (!d) continue;
    const o = transform(d, Float64Array.of(0, 0));
    ictx.lineTo(o[0], o[1]);
  }
  ictx.stroke();
}

function drawInterp() {
  end.a = parseFloat($("angle").value);
  const t = parseFloat($("t").value);
  const p = poseDcn(start), q = poseDcn(end);
  const both = new Float64Array([...p, ...q]);
  const viaSlerp = (s) => slerp(p, q, s);
  const viaDlb = (s) => {
    try {
      return blend(both, Float64Array.of(1 - s, s));
    } catch {
      return null;
    }
  };

  ictx.clearRect(0, 0, icv.width, icv.height);
  ictx.lineWidth = 1;
  outline(transform(p, SHAPE), "#888", "rgba(0,0,0,0.08)");
  outline(transform(q, SHAPE), "#888", "rgba(0,0,0,0.15)");
  for (let k = 1; k < 10; k++) {
    const s = k / 10;
    outline(transform(viaSlerp(s), SHAPE), "rgba(23,105,170,0.35)");
    const d = viaDlb(s);
    if (d) outline(transform(d, SHAPE), "rgba(209,73,91,0.35)");
  }
  samplePath(viaSlerp, "#1769aa");
  samplePath(viaDlb, "#d1495b");
  ictx.lineWidth = 2;
  outline(transform(viaSlerp(t), SHAPE), "#1769aa", "rgba(23,105,170,0.25)");
  const d = viaDlb(t);
  if (d) outline(transform(d, SHAPE), "#d1495b", "rgba(209,73,91,0.25)");
}

function ipointer(ev) {
  const r = icv.getBoundingClientRect();
  return { x: ((ev.clientX - r.left) * icv.width) / r.width, y: ((ev.clientY - r.top) * icv.height) / r.height };
}

icv.addEventListener("pointerdown", (ev) => {
  const p = ipointer(ev);
  if (Math.hypot(p.x - end.x, p.y - end.y) < 40) {
    dragEnd = { dx: end.x - p.x, dy: end.y - p.y };
    icv.setPointerCapture(ev.pointerId);
  }
});
icv.addEventListener("pointermove", (ev) => {
  if (!dragEnd) return;
  const p = ipointer(ev);
  end.x = p.x + dragEnd.dx;
  end.y = p.y + dragEnd.dy;
  drawInterp();
});
icv.addEventListener("pointerup", () => (dragEnd = null));
$("angle").addEventListener("input", drawInterp);
$("t").addEventListener("input", drawInterp);

drawInterp();
