from chibench.cli import main

main()
