from commring.cli import main

main()
