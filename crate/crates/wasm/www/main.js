import init, { apply_operator, space_dimensions, duality_report } from "./pkg/feec_wasm.js";

const KINDS = ["H", "P", "Pminus", "ringH", "ringP", "ringPminus"];

function el(tag, attrs = {}, ...children) {
  const node = document.createElement(tag);
  Object.assign(node, attrs);
  node.append(...children);
  return node;
}

function fail(target, err) {
  target.replaceChildren(el("span", { className: "error", textContent: String(err) }));
}

function table(header, rows) {
  return el("table", {},
    el("tr", {}, ...header.map((h) => el("th", { textContent: h }))),
    ...rows.map((row) => el("tr", {}, ...row.map((c) => el("td", { textContent: c })))));
}

function values(form) {
  return Object.fromEntries(new FormData(form).entries());
}

function onApply(event) {
  event.preventDefault();
  const out = document.getElementById("apply-out");
  const v = values(event.target);
  const r = v.r === "" ? -1 : Number(v.r);
  try {
    const result = JSON.parse(apply_operator(v.op, Number(v.n), r, v.expr));
    out.classList.remove("error");
    out.textContent = result.text + "\n\n" + JSON.stringify(result.form);
  } catch (err) {
    out.classList.add("error");
    out.textContent = String(err);
  }
}

function onDims(event) {
  event.preventDefault();
  const out = document.getElementById("dims-out");
  const v = values(event.target);
  try {
    const { rows } = JSON.parse(space_dimensions(Number(v.n), Number(v.max_r)));
    const body = rows.map((row) => [row.r, row.k, ...KINDS.map((k) => (row[k] === null ? "–" : row[k]))]);
    out.replaceChildren(table(["r", "k", ...KINDS], body));
  } catch (err) {
    fail(out, err);
  }
}

function onPair(event) {
  event.preventDefault();
  const out = document.getElementById("pair-out");
  const v = values(event.target);
  try {
    const { report, row_basis, col_basis } = JSON.parse(
      duality_report(Number(v.n), Number(v.r), Number(v.k), v.family));
    const verdict = report.nondegenerate
      ? el("span", { className: "ok", textContent: "nondegenerate" })
      : el("span", { className: "bad", textContent: "degenerate" });
    const summary = el("p", {},
      `${report.rows_space} × ${report.cols_space}: ${report.rows}×${report.cols}, rank ${report.rank}, ` +
      `determinant ${report.determinant ?? "(not square)"} `, verdict);
    const header = ["", ...col_basis.map((_, j) => `β${j + 1}`)];
    const rows = report.entries.map((row, i) => [`α${i + 1}`, ...row]);
    const bases = el("pre", {
      textContent: row_basis.map((b, i) => `α${i + 1} = ${b}`).join("\n") + "\n\n" +
        col_basis.map((b, j) => `β${j + 1} = ${b}`).join("\n"),
    });
    out.replaceChildren(summary, table(header, rows), bases);
  } catch (err) {
    fail(out, err);
  }
}

await init();
document.getElementById("apply-form").addEventListener("submit", onApply);
document.getElementById("dims-form").addEventListener("submit", onDims);
document.getElementById("pair-form").addEventListener("submit", onPair);
