import { ApiClient } from "./api.js";
import { ReviewSession } from "./session.js";
import { bindKeyboard, render } from "./view.js";
function main() {
    const root = document.getElementById("app");
    const form = document.getElementById("reviewer-form");
    const input = document.getElementById("reviewer");
    if (!root || !form || !input) {
        throw new Error("review page markup incomplete");
    }
    const api = new ApiClient("");
    const session = new ReviewSession(api, (state) => render(root, state, session));
    bindKeyboard(root);
    form.addEventListener("submit", (event) => {
        event.preventDefault();
        const reviewer = input.value.trim();
        if (reviewer) {
            form.style.display = "none";
            void session.start(reviewer);
        }
    });
}
main();
