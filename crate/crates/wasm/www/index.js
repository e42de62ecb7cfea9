import init, { norm, optimal, maximal } from "./pkg/ricalc_wasm.js";

const $ = (id) => document.getElementById(id);

function show(out, f) {
  try {
    out.textContent = JSON.stringify(JSON.parse(f()), null, 2);
  } catch (e) {
    out.textContent = "error: " + e;
  }
}

function plot(canvas, xs, series) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const all = series.flatMap((s) => s.ys).filter(Number.isFinite);
  const top = Math.max(...all, 1e-12) * 1.1;
  const x0 = xs[0], x1 = xs[xs.length - 1];
  const px = (x) => ((x - x0) / (x1 - x0)) * (w - 20) + 10;
  const py = (y) => h - 10 - (y / top) * (h - 20);
  ctx.strokeStyle = "#ddd";
  ctx.beginPath();
  ctx.moveTo(10, py(0));
  ctx.lineTo(w - 10, py(0));
  ctx.stroke();
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    xs.forEach((x, i) => (i ? ctx.lineTo(px(x), py(s.ys[i])) : ctx.moveTo(px(x), py(s.ys[i]))));
    ctx.stroke();
  }
}

function drawMaximal() {
  try {
    const r = JSON.parse(maximal($("max-f").value, parseFloat($("max-gamma").value), 600));
    plot($("max-line"), r.x, [
      { ys: r.f, color: "#888" },
      { ys: r.Mf, color: "#c33" },
    ]);
    plot($("max-star"), r.t, [
      { ys: r.Mf_star, color: "#c33" },
      { ys: r.f_doublestar, color: "#36c" },
    ]);
    const ratios = r.t.map((_, i) => r.f_doublestar[i] / r.Mf_star[i]);
    $("max-out").textContent =
      "f**/(Mf)* ranges over [" + Math.min(...ratios).toFixed(4) + ", " + Math.max(...ratios).toFixed(4) + "]";
  } catch (e) {
    $("max-out").textContent = "error: " + e;
  }
}

await init();
$("norm-go").onclick = () => show($("norm-out"), () => norm($("norm-f").value, $("norm-x").value));
$("opt-go").onclick = () =>
  show($("opt-out"), () =>
    optimal($("opt-op").value, $("opt-x").value, $("opt-dir").value, parseFloat($("opt-gamma").value), parseFloat($("opt-n").value)),
  );
$("max-go").onclick = drawMaximal;
drawMaximal();
