import init, { normal_forms, circulant, dimension } from "./pkg/multicirc_web.js";

const $ = (id) => document.getElementById(id);

function show(target, fn) {
  target.classList.remove("error");
  try {
    return fn();
  } catch (e) {
    target.classList.add("error");
    target.textContent = e.message ?? String(e);
    return null;
  }
}

function formatMatrix(rows) {
  return rows.map((r) => "  [" + r.join(", ") + "]").join("\n");
}

function onForms() {
  const out = $("forms-out");
  show(out, () => {
    const r = JSON.parse(normal_forms($("matrix").value));
    out.textContent =
      `${r.group}, order ${r.order}\n` +
      `S = diag(${r.smith.join(", ")})\n` +
      `U =\n${formatMatrix(r.u)}\nV =\n${formatMatrix(r.v)}\n` +
      `H =\n${formatMatrix(r.hermite)}`;
  });
}

// Vertices sit on a grid indexed by their last two Smith coordinates; a
// cyclic group is laid out on a circle.
function layout(d, w, h) {
  const n = d.labels.length;
  if (d.factors.length <= 1) {
    const r = Math.min(w, h) / 2 - 30;
    return d.labels.map((_, i) => [
      w / 2 + r * Math.cos((2 * Math.PI * i) / n - Math.PI / 2),
      h / 2 + r * Math.sin((2 * Math.PI * i) / n - Math.PI / 2),
    ]);
  }
  const k = d.factors.length;
  const rows = d.factors[k - 2];
  const cols = d.factors[k - 1];
  const sx = (w - 60) / Math.max(cols - 1, 1);
  const sy = (h - 60) / Math.max(rows - 1, 1);
  return d.coords.map((c) => {
    // any earlier coordinates shift the point slightly so vertices stay apart
    const extra = c.slice(0, k - 2).reduce((a, x, i) => a + x * (i + 1), 0);
    return [30 + c[k - 1] * sx + extra * 6, 30 + c[k - 2] * sy + extra * 6];
  });
}

function arrow(ctx, [x1, y1], [x2, y2], directed) {
  const dx = x2 - x1;
  const dy = y2 - y1;
  const len = Math.hypot(dx, dy) || 1;
  const ux = dx / len;
  const uy = dy / len;
  // bend directed arcs so that u->v and v->u stay distinguishable
  const bend = directed ? 0.12 * len : 0;
  const mx = (x1 + x2) / 2 - uy * bend;
  const my = (y1 + y2) / 2 + ux * bend;
  const ex = x2 - ux * 8;
  const ey = y2 - uy * 8;
  ctx.beginPath();
  ctx.moveTo(x1, y1);
  ctx.quadraticCurveTo(mx, my, ex, ey);
  ctx.stroke();
  if (directed) {
    const tx = ex - mx;
    const ty = ey - my;
    const tl = Math.hypot(tx, ty) || 1;
    const ax = tx / tl;
    const ay = ty / tl;
    ctx.beginPath();
    ctx.moveTo(ex, ey);
    ctx.lineTo(ex - 7 * ax - 4 * ay, ey - 7 * ay + 4 * ax);
    ctx.lineTo(ex - 7 * ax + 4 * ay, ey - 7 * ay - 4 * ax);
    ctx.closePath();
    ctx.fill();
  }
}

function draw(d) {
  const canvas = $("canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const pos = layout(d, canvas.width, canvas.height);
  ctx.strokeStyle = "#6a7fb5";
  ctx.fillStyle = "#6a7fb5";
  for (const [u, v] of d.edges) arrow(ctx, pos[u], pos[v], d.directed);
  ctx.font = "11px monospace";
  pos.forEach(([x, y], i) => {
    ctx.fillStyle = "#fff";
    ctx.beginPath();
    ctx.arc(x, y, 6, 0, 2 * Math.PI);
    ctx.fill();
    ctx.strokeStyle = "#222";
    ctx.stroke();
    ctx.fillStyle = "#222";
    ctx.fillText(d.labels[i], x + 8, y - 8);
  });
}

function onDraw() {
  const out = $("graph-out");
  show(out, () => {
    const d = JSON.parse(circulant($("matrix").value, $("jumps").value, $("mode").value));
    out.textContent =
      `${d.group}: ${d.labels.length} vertices, ${d.edges.length} ` +
      `${d.directed ? "arcs" : "edges"}, ${d.components} component(s)`;
    draw(d);
  });
}

function onDimension() {
  const out = $("graph-out");
  show(out, () => {
    const r = JSON.parse(dimension($("matrix").value, $("jumps").value, $("mode").value));
    const lines = [
      `order ${r.order}, ${r.alpha} component(s)`,
      `bounds: rank ${r.snf_rank_bound}, prime exponent ${r.prime_exponent_bound}, generators ${r.generator_bound}`,
    ];
    if (r.circulant) lines.push(`circulant: ${r.circulant.is_circulant} (rule ${r.circulant.rule})`);
    if (r.exceptional_eta !== null) lines.push(`exceptional case, eta = ${r.exceptional_eta}`);
    lines.push(
      r.exact_dimension
        ? `dimension ${r.exact_dimension.value}`
        : `dimension at most ${Math.min(r.snf_rank_bound, r.prime_exponent_bound, r.generator_bound)}`,
    );
    out.textContent = lines.join("\n");
  });
}

await init();
$("forms").addEventListener("click", onForms);
$("draw").addEventListener("click", onDraw);
$("dimension").addEventListener("click", onDimension);
onForms();
onDraw();
