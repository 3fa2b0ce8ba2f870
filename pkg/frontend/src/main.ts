import { mount } from "./app.js";

const root = document.getElementById("app");
if (root) {
  mount(root);
} else {
  document.body.textContent = "missing #app mount point";
}
